//! Reduction of a weighted orbit space with fixed points to an essential
//! embedded sphere of nonnegative self-intersection.
//!
//! The engine is a fixed-order rewrite system:
//!
//! 1. split every weighted circle with three or more fixed points off as an
//!    equivariant connected summand over `S^3`;
//! 2. replace every remaining two-fixed-point circle (Pao replacement);
//! 3. two or more boundary components: an arc between two of them lifts to a
//!    sphere of square 0;
//! 4. one boundary component: the one-boundary analysis;
//! 5. otherwise enclose arcs and isolated points in a ball, split the fiber
//!    sum, and finish with the two-fixed-point argument.
//!
//! Simply connected summands emitted on the way may carry the positive part
//! of the intersection form. That is detected either from a classification
//! the caller supplies or from `b+` exceeding what the main piece can hold.

mod fintushel;
mod rules;

use std::collections::BTreeMap;
use std::fmt;

use crate::orbit::{
    euler_characteristic, validate, Component, IsolatedFixedPoint, OrbitError, Violation,
    WeightedOrbitSpace,
};

pub use fintushel::{fintushel_summands, FintushelSummand, SummandMultiset};
pub use rules::{
    ball_fiber_sum_split, final_two_fixed_points, find_boundary_arc_sphere,
    one_boundary_analysis, one_boundary_arithmetic, pao_replace, split_circle, OneBoundaryData,
    OneBoundaryOutcome,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("invalid presentation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidInput(Vec<Violation>),
    #[error("no circle with id {0}")]
    NoSuchCircle(usize),
    #[error("circle {0} is simply weighted")]
    NotMultiplyWeighted(usize),
    #[error("circle {circle} has {count} fixed points; splitting needs at least 3")]
    TooFewFixedPoints { circle: usize, count: usize },
    #[error("circle {circle} has {count} fixed points; cut point {cut} does not exist")]
    CutPointOutOfRange { circle: usize, cut: usize, count: usize },
    #[error("circle {circle} carries a single fixed point, which no rule reduces")]
    SingleFixedPointCircle { circle: usize },
    #[error("circle {circle} has {count} fixed points; replacement needs exactly 2")]
    WrongFixedPointCount { circle: usize, count: usize },
    #[error("circle {circle} has index {index}; two isolated points of index +1 and -1 cannot absorb it")]
    IndexUnassignable { circle: usize, index: i64 },
    #[error("multiply-weighted circle {0} is still present")]
    MultiplyWeightedCirclePresent(usize),
    #[error("boundary components are present")]
    BoundaryPresent,
    #[error("arcs and isolated points have total index {0}; the enclosing sphere has nonzero Euler number")]
    EnclosedIndexNonzero(i64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("b2 - n + 2g is odd (b2 = {b2}, n = {n}, g = {genus})")]
    ParityViolation { b2: i64, n: i64, genus: i64 },
    #[error("b2 = {b2} does not exceed n = {n}; the intersection form would be negative definite")]
    NotEnoughTopology { b2: i64, n: i64 },
    #[error("b1(Y) = 0 with b+ = {b_plus}: chi(X) = 2 forces b2 = 2 b1 = 0")]
    B1NotPositive { b_plus: u32 },
    #[error(transparent)]
    Betti(#[from] OrbitError),
    #[error("|sigma| = {} exceeds b2 = {b2}", .sigma.abs())]
    SignatureOutOfRange { b2: i64, sigma: i64 },
    #[error("spin summand needs sigma = 0 and even b2 (b2 = {b2}, sigma = {sigma})")]
    SpinParityViolation { b2: i64, sigma: i64 },
    #[error("b2 + sigma must be even (b2 = {b2}, sigma = {sigma})")]
    SignatureParity { b2: i64, sigma: i64 },
    #[error("summand {summand} has b2 = {expected} but the supplied data says {found}")]
    SummandDataMismatch { summand: usize, expected: i64, found: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PaoBranch {
    A,
    B,
}

impl fmt::Display for PaoBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PaoBranch::A => "A",
            PaoBranch::B => "B",
        })
    }
}

/// How Pao replacement picks its branch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PaoPolicy {
    /// Branch A while every remaining two-point circle has index 0 and `Y`
    /// has no boundary; branch B otherwise.
    #[default]
    ByIndex,
    Always(PaoBranch),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SummandTopology {
    pub b2: u32,
    pub sigma: i64,
    pub spin: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    pub pao: PaoPolicy,
    /// Topology of emitted summands, keyed by their position in
    /// [`ReductionTrace::summands`].
    pub summand_topology: BTreeMap<usize, SummandTopology>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RewriteRule {
    SplitCircle { circle: usize, cut_point: usize, summand: usize },
    PaoReplaceA { circle: usize },
    PaoReplaceB { circle: usize },
    BoundaryArcSphere { boundaries: (usize, usize) },
    BallFiberSumSplit { enclosed: Vec<Component>, summand: usize },
    OneBoundaryAnalysis,
    FinalTwoFixedPoints,
}

impl RewriteRule {
    pub fn name(&self) -> &'static str {
        match self {
            RewriteRule::SplitCircle { .. } => "SplitCircle",
            RewriteRule::PaoReplaceA { .. } => "PaoReplaceA",
            RewriteRule::PaoReplaceB { .. } => "PaoReplaceB",
            RewriteRule::BoundaryArcSphere { .. } => "BoundaryArcSphere",
            RewriteRule::BallFiberSumSplit { .. } => "BallFiberSumSplit",
            RewriteRule::OneBoundaryAnalysis => "OneBoundaryAnalysis",
            RewriteRule::FinalTwoFixedPoints => "FinalTwoFixedPoints",
        }
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteRule::SplitCircle { circle, cut_point, summand } => write!(
                f,
                "SplitCircle(circle {circle}, cut at fixed point {cut_point}, summand {summand})"
            ),
            RewriteRule::PaoReplaceA { circle } => write!(f, "PaoReplaceA(circle {circle})"),
            RewriteRule::PaoReplaceB { circle } => write!(f, "PaoReplaceB(circle {circle})"),
            RewriteRule::BoundaryArcSphere { boundaries: (a, b) } => {
                write!(f, "BoundaryArcSphere(boundary {a}, boundary {b})")
            }
            RewriteRule::BallFiberSumSplit { enclosed, summand } => {
                let ids: Vec<String> = enclosed.iter().map(ToString::to_string).collect();
                write!(f, "BallFiberSumSplit([{}], summand {summand})", ids.join(", "))
            }
            RewriteRule::OneBoundaryAnalysis => f.write_str("OneBoundaryAnalysis"),
            RewriteRule::FinalTwoFixedPoints => f.write_str("FinalTwoFixedPoints"),
        }
    }
}

/// One rule application. Terminal analyses leave the presentation unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub before: WeightedOrbitSpace,
    pub after: WeightedOrbitSpace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummandKind {
    MainPiece,
    SimplyConnectedPiece,
    FixedPointFreePiece,
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandKind::MainPiece => "MainPiece",
            SummandKind::SimplyConnectedPiece => "SimplyConnectedPiece",
            SummandKind::FixedPointFreePiece => "FixedPointFreePiece",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmittedSummand {
    pub presentation: WeightedOrbitSpace,
    pub kind: SummandKind,
    /// Step that produced it; `None` for the final main piece.
    pub emitted_by: Option<usize>,
    pub classification: Option<SummandMultiset>,
}

impl EmittedSummand {
    /// `b2` of a simply connected piece over `S^3`, where `b1 = 0`.
    pub fn simply_connected_b2(&self) -> Option<i64> {
        (self.kind == SummandKind::SimplyConnectedPiece)
            .then(|| euler_characteristic(&self.presentation) - 2)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<RewriteStep>,
    pub summands: Vec<EmittedSummand>,
}

impl ReductionTrace {
    /// Upper bound on the number of steps for a run on `y`.
    pub fn step_bound(y: &WeightedOrbitSpace) -> usize {
        y.circles.iter().map(|c| c.fixed_point_count).sum::<usize>() + 3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SphereKind {
    /// Over an arc joining two boundary components.
    BoundaryToBoundaryArc,
    /// Over an arc joining the two remaining isolated fixed points.
    ArcBetweenTwoFixedPoints,
    /// From the one-boundary analysis: a sphere over an arc ending on the
    /// boundary surface, homologous to an essential torus.
    ArcFixedPointToBoundary,
}

impl fmt::Display for SphereKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SphereKind::BoundaryToBoundaryArc => "BoundaryToBoundaryArc",
            SphereKind::ArcBetweenTwoFixedPoints => "ArcBetweenTwoFixedPoints",
            SphereKind::ArcFixedPointToBoundary => "ArcFixedPointToBoundary",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereCertificate {
    pub kind: SphereKind,
    pub self_intersection: i64,
    /// Components of the presentation the sphere lies over, indexed in the
    /// `before` state of the final step.
    pub components: Vec<Component>,
    pub justification: String,
}

/// An essential sphere coming from a `CP^2` or `S^2 x S^2` factor of an
/// emitted simply connected summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandWitness {
    /// Summands that can hold the factor (positions in the trace).
    pub summands: Vec<usize>,
    /// The factor, when the summand was classified.
    pub factor: Option<FintushelSummand>,
    /// Square of the sphere; when the factor is unknown this is 0, a lower
    /// bound valid for both candidate factors.
    pub self_intersection: i64,
    pub justification: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    SphereFound(SphereCertificate),
    SummandSphere(SummandWitness),
    OutOfScope(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    /// An essential embedded sphere of nonnegative square exists.
    EssentialSphere,
    OutOfScope,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::SphereFound(_) | Verdict::SummandSphere(_) => VerdictKind::EssentialSphere,
            Verdict::OutOfScope(_) => VerdictKind::OutOfScope,
        }
    }

    pub fn self_intersection(&self) -> Option<i64> {
        match self {
            Verdict::SphereFound(c) => Some(c.self_intersection),
            Verdict::SummandSphere(w) => Some(w.self_intersection),
            Verdict::OutOfScope(_) => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::SphereFound(c) => write!(
                f,
                "SphereFound({}, self-intersection {})",
                c.kind, c.self_intersection
            ),
            Verdict::SummandSphere(w) => match w.factor {
                Some(factor) => write!(
                    f,
                    "SummandSphere({factor} factor, self-intersection {})",
                    w.self_intersection
                ),
                None => write!(
                    f,
                    "SummandSphere(CP² or S²×S² factor, self-intersection >= {})",
                    w.self_intersection
                ),
            },
            Verdict::OutOfScope(note) => write!(f, "OutOfScope({note})"),
        }
    }
}

struct Run<'a> {
    options: &'a ReduceOptions,
    b_plus: u32,
    trace: ReductionTrace,
}

impl Run<'_> {
    fn push_step(&mut self, rule: RewriteRule, before: WeightedOrbitSpace, after: WeightedOrbitSpace) {
        debug_assert!(validate(&after).is_empty());
        self.trace.steps.push(RewriteStep { rule, before, after });
    }

    /// Records a summand and, when the caller classified it, returns a
    /// witness if it carries a `CP^2` or `S^2 x S^2` factor.
    fn emit(
        &mut self,
        presentation: WeightedOrbitSpace,
        kind: SummandKind,
    ) -> Result<(usize, Option<SummandWitness>), ReduceError> {
        let position = self.trace.summands.len();
        let mut summand = EmittedSummand {
            presentation,
            kind,
            emitted_by: Some(self.trace.steps.len()),
            classification: None,
        };
        let mut witness = None;
        if let (Some(b2), Some(topology)) = (
            summand.simply_connected_b2(),
            self.options.summand_topology.get(&position),
        ) {
            if i64::from(topology.b2) != b2 {
                return Err(ReduceError::SummandDataMismatch {
                    summand: position,
                    expected: b2,
                    found: i64::from(topology.b2),
                });
            }
            let factors = fintushel_summands(topology.b2, topology.sigma, topology.spin)?;
            summand.classification = Some(factors);
            if let Some(factor) = factors.positive_factor() {
                witness = Some(SummandWitness {
                    summands: vec![position],
                    factor: Some(factor),
                    self_intersection: factor.nonnegative_sphere_square().unwrap_or(0),
                    justification: format!(
                        "summand {position} decomposes as {factors}; the {factor} factor \
                         contains an essential sphere of nonnegative square"
                    ),
                });
            }
        }
        self.trace.summands.push(summand);
        Ok((position, witness))
    }

    /// When `b+` exceeds what the main piece can hold (`capacity`), the rest
    /// sits in unclassified simply connected summands, and any such summand
    /// with `b+ > 0` has a `CP^2` or `S^2 x S^2` factor.
    fn forced_summand_sphere(&self, capacity: i64) -> Option<SummandWitness> {
        let deficit = i64::from(self.b_plus) - capacity;
        if deficit <= 0 {
            return None;
        }
        let candidates: Vec<(usize, i64)> = self
            .trace
            .summands
            .iter()
            .enumerate()
            .filter(|(_, s)| s.classification.is_none())
            .filter_map(|(i, s)| s.simply_connected_b2().map(|b2| (i, b2)))
            .filter(|&(_, b2)| b2 > 0)
            .collect();
        let room: i64 = candidates.iter().map(|&(_, b2)| b2).sum();
        if room < deficit {
            return None;
        }
        Some(SummandWitness {
            summands: candidates.iter().map(|&(i, _)| i).collect(),
            factor: None,
            self_intersection: 0,
            justification: format!(
                "b+ = {} but the main piece holds at most {}; the remaining {deficit} lies in \
                 simply connected summands, so one of them has a CP² or S²×S² factor",
                self.b_plus,
                capacity.max(0)
            ),
        })
    }

    fn finish(mut self, main: WeightedOrbitSpace, verdict: Verdict) -> (Verdict, ReductionTrace) {
        self.trace.summands.push(EmittedSummand {
            presentation: main,
            kind: SummandKind::MainPiece,
            emitted_by: None,
            classification: None,
        });
        (verdict, self.trace)
    }
}

fn b2_of(y: &WeightedOrbitSpace) -> i64 {
    euler_characteristic(y) - 2 + 2 * i64::from(y.b1_y)
}

/// Runs the reduction with default options.
pub fn reduce(y: &WeightedOrbitSpace, b_plus: u32) -> Result<(Verdict, ReductionTrace), ReduceError> {
    reduce_with(y, b_plus, &ReduceOptions::default())
}

pub fn reduce_with(
    y: &WeightedOrbitSpace,
    b_plus: u32,
    options: &ReduceOptions,
) -> Result<(Verdict, ReductionTrace), ReduceError> {
    let violations = validate(y);
    if !violations.is_empty() {
        return Err(ReduceError::InvalidInput(violations));
    }
    if !y.has_fixed_points() {
        return Ok((
            Verdict::OutOfScope(
                "the action has no fixed points; use the fixed-point-free pullback sum".into(),
            ),
            ReductionTrace::default(),
        ));
    }
    if b_plus == 0 {
        return Ok((
            Verdict::OutOfScope("b+ = 0, outside the b+ > 0 hypothesis".into()),
            ReductionTrace::default(),
        ));
    }
    if let Some((i, _)) = y.circles.iter().enumerate().find(|(_, c)| c.fixed_point_count == 1) {
        return Err(ReduceError::SingleFixedPointCircle { circle: i });
    }

    let mut run = Run {
        options,
        b_plus,
        trace: ReductionTrace::default(),
    };
    let mut main = y.clone();

    while let Some(circle) = main.circles.iter().position(|c| c.fixed_point_count >= 3) {
        let (y0, n1) = split_circle(&main, circle, 0)?;
        let (summand, witness) = run.emit(n1, SummandKind::SimplyConnectedPiece)?;
        run.push_step(
            RewriteRule::SplitCircle { circle, cut_point: 0, summand },
            main,
            y0.clone(),
        );
        main = y0;
        if let Some(w) = witness {
            return Ok(run.finish(main, Verdict::SummandSphere(w)));
        }
    }

    while let Some(circle) = main.circles.iter().position(|c| c.fixed_point_count == 2) {
        let branch = match options.pao {
            PaoPolicy::Always(branch) => branch,
            PaoPolicy::ByIndex => {
                let needs_b = !main.boundaries.is_empty()
                    || main
                        .circles
                        .iter()
                        .any(|c| c.fixed_point_count == 2 && c.index != 0);
                if needs_b {
                    PaoBranch::B
                } else {
                    PaoBranch::A
                }
            }
        };
        let after = pao_replace(&main, circle, branch)?;
        let rule = match branch {
            PaoBranch::A => RewriteRule::PaoReplaceA { circle },
            PaoBranch::B => RewriteRule::PaoReplaceB { circle },
        };
        run.push_step(rule, main, after.clone());
        main = after;
    }

    if let Some(cert) = find_boundary_arc_sphere(&main) {
        run.push_step(
            RewriteRule::BoundaryArcSphere { boundaries: (0, 1) },
            main.clone(),
            main.clone(),
        );
        return Ok(run.finish(main, Verdict::SphereFound(cert)));
    }

    if main.boundaries.len() == 1 {
        // n spheres of square -1 over arcs to the boundary span a negative
        // definite part of H2 of the main piece
        let capacity = b2_of(&main) - main.isolated.len() as i64;
        if let Some(w) = run.forced_summand_sphere(capacity) {
            return Ok(run.finish(main, Verdict::SummandSphere(w)));
        }
        let outcome = one_boundary_analysis(&main, b_plus)?;
        run.push_step(RewriteRule::OneBoundaryAnalysis, main.clone(), main.clone());
        return Ok(run.finish(main, Verdict::SphereFound(outcome.certificate)));
    }

    let (x1, n) = ball_fiber_sum_split(&main)?;
    let enclosed: Vec<Component> = (0..main.arcs.len())
        .map(Component::Arc)
        .chain((0..main.isolated.len()).map(Component::Isolated))
        .collect();
    let (summand, witness) = run.emit(n, SummandKind::SimplyConnectedPiece)?;
    run.emit(x1.clone(), SummandKind::FixedPointFreePiece)?;
    let mut after = x1;
    after.name = main.name.clone();
    after.isolated = vec![IsolatedFixedPoint { index: 1 }, IsolatedFixedPoint { index: -1 }];
    run.push_step(
        RewriteRule::BallFiberSumSplit { enclosed, summand },
        main,
        after.clone(),
    );
    main = after;
    if let Some(w) = witness {
        return Ok(run.finish(main, Verdict::SummandSphere(w)));
    }

    if let Some(w) = run.forced_summand_sphere(b2_of(&main)) {
        return Ok(run.finish(main, Verdict::SummandSphere(w)));
    }
    let cert = final_two_fixed_points(&main, b_plus)?;
    run.push_step(RewriteRule::FinalTwoFixedPoints, main.clone(), main.clone());
    Ok(run.finish(main, Verdict::SphereFound(cert)))
}
