//! Weighted orbit spaces of circle actions on 4-manifolds, their validation,
//! and the Betti numbers they determine.
//!
//! A presentation lists the singular data of the quotient 3-manifold `Y`:
//! weighted arcs, weighted circles, isolated fixed points and boundary
//! surfaces (fixed surfaces of the action), each carrying an integer index.
//! Indices are taken as input; the only global law checked is that they sum
//! to zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::abelian::{AbelianError, GroupElement, GroupPresentation};

/// Isotropy data `(alpha, beta)` on an exceptional orbit segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub alpha: i64,
    pub beta: i64,
}

impl Weight {
    /// Builds a weight, reducing `beta` into `[0, alpha)` when `alpha >= 1`.
    /// Coprimality is not enforced here; [`validate`] reports it.
    pub fn new(alpha: i64, beta: i64) -> Self {
        let beta = if alpha >= 1 { beta.rem_euclid(alpha) } else { beta };
        Self { alpha, beta }
    }

    pub fn trivial() -> Self {
        Self { alpha: 1, beta: 0 }
    }

    pub fn is_normalized(&self) -> bool {
        self.alpha >= 1 && (0..self.alpha).contains(&self.beta)
    }

    pub fn is_coprime(&self) -> bool {
        self.alpha.gcd(&self.beta) == 1
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// A weighted arc. Both endpoints are fixed points and consecutive segments
/// meet at interior fixed points, so `s` segments carry `s + 1` fixed points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedArc {
    pub segments: Vec<Weight>,
    pub index: i64,
}

impl WeightedArc {
    pub fn fixed_points(&self) -> usize {
        self.segments.len() + 1
    }
}

/// A weighted circle. Simply-weighted circles have no fixed points and a
/// single segment; otherwise the segments alternate with the fixed points
/// around the circle, fixed point `j` sitting between segments `j` and
/// `j + 1 (mod len)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedCircle {
    pub segments: Vec<Weight>,
    pub fixed_point_count: usize,
    pub index: i64,
}

impl WeightedCircle {
    pub fn simple(weight: Weight, index: i64) -> Self {
        Self {
            segments: vec![weight],
            fixed_point_count: 0,
            index,
        }
    }

    pub fn multiple(segments: Vec<Weight>, index: i64) -> Self {
        Self {
            fixed_point_count: segments.len(),
            segments,
            index,
        }
    }

    pub fn is_simply_weighted(&self) -> bool {
        self.fixed_point_count == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IsolatedFixedPoint {
    pub index: i64,
}

/// A boundary component of `Y`; its preimage is a fixed surface of this genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundarySurface {
    pub genus: u32,
    pub index: i64,
}

impl BoundarySurface {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus)
    }
}

/// A legally weighted 3-manifold, up to the data the engine consumes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedOrbitSpace {
    pub name: String,
    pub b1_y: u32,
    pub arcs: Vec<WeightedArc>,
    pub circles: Vec<WeightedCircle>,
    pub isolated: Vec<IsolatedFixedPoint>,
    pub boundaries: Vec<BoundarySurface>,
    /// Presentation of the group housing the Euler class.
    pub pic_t: Option<GroupPresentation>,
    /// Euler class in the generator coordinates of `pic_t`.
    pub euler_class: Option<Vec<BigInt>>,
}

impl WeightedOrbitSpace {
    pub fn empty(name: impl Into<String>, b1_y: u32) -> Self {
        Self {
            name: name.into(),
            b1_y,
            arcs: Vec::new(),
            circles: Vec::new(),
            isolated: Vec::new(),
            boundaries: Vec::new(),
            pic_t: None,
            euler_class: None,
        }
    }

    /// The `S^3` quotient of the circle action on `S^4` with two fixed points.
    pub fn s4() -> Self {
        let mut y = Self::empty("s4", 0);
        y.isolated = vec![IsolatedFixedPoint { index: 1 }, IsolatedFixedPoint { index: -1 }];
        y
    }

    pub fn index_sum(&self) -> i64 {
        self.arcs.iter().map(|a| a.index).sum::<i64>()
            + self.circles.iter().map(|c| c.index).sum::<i64>()
            + self.isolated.iter().map(|p| p.index).sum::<i64>()
            + self.boundaries.iter().map(|b| b.index).sum::<i64>()
    }

    pub fn multiply_weighted_circles(&self) -> impl Iterator<Item = (usize, &WeightedCircle)> {
        self.circles
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_simply_weighted())
    }

    /// True when the action has at least one fixed point (isolated, on an
    /// arc or circle, or on a fixed surface).
    pub fn has_fixed_points(&self) -> bool {
        let summary = fixed_point_summary(self);
        summary.isolated_total > 0 || !summary.surfaces.is_empty()
    }

    /// The Euler class as a group element, when both the group and the class
    /// are present.
    pub fn euler_element(&self) -> Option<Result<GroupElement, AbelianError>> {
        match (&self.pic_t, &self.euler_class) {
            (Some(p), Some(coords)) => Some(p.element(coords)),
            _ => None,
        }
    }
}

/// Where in a presentation a violation was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Arc(usize),
    Circle(usize),
    Isolated(usize),
    Boundary(usize),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Arc(i) => write!(f, "arc {i}"),
            Component::Circle(i) => write!(f, "circle {i}"),
            Component::Isolated(i) => write!(f, "isolated point {i}"),
            Component::Boundary(i) => write!(f, "boundary {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    IndexSumNonzero(i64),
    AlphaNotPositive { at: Component, weight: Weight },
    WeightNotCoprime { at: Component, weight: Weight },
    WeightNotNormalized { at: Component, weight: Weight },
    EmptySegments(Component),
    SimplyWeightedSegments { at: Component, segments: usize },
    FixedPointCountMismatch { at: Component, fixed_points: usize, segments: usize },
    EulerClassWithoutGroup,
    EulerClassArity { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexSumNonzero(s) => write!(f, "IndexSumNonzero({s:+}): indices sum to {s}"),
            Violation::AlphaNotPositive { at, weight } => {
                write!(f, "AlphaNotPositive: {at} has weight {weight} with alpha < 1")
            }
            Violation::WeightNotCoprime { at, weight } => {
                write!(f, "WeightNotCoprime: {at} has weight {weight}")
            }
            Violation::WeightNotNormalized { at, weight } => {
                write!(f, "WeightNotNormalized: {at} has weight {weight} with beta outside [0, alpha)")
            }
            Violation::EmptySegments(at) => write!(f, "EmptySegments: {at} has no segments"),
            Violation::SimplyWeightedSegments { at, segments } => write!(
                f,
                "SimplyWeightedSegments: {at} has no fixed points but {segments} segments"
            ),
            Violation::FixedPointCountMismatch { at, fixed_points, segments } => write!(
                f,
                "FixedPointCountMismatch: {at} has {fixed_points} fixed points but {segments} segments"
            ),
            Violation::EulerClassWithoutGroup => {
                write!(f, "EulerClassWithoutGroup: euler_class given without pic_t")
            }
            Violation::EulerClassArity { expected, found } => write!(
                f,
                "EulerClassArity: expected {expected} coordinates, found {found}"
            ),
        }
    }
}

fn check_weights(at: Component, segments: &[Weight], out: &mut Vec<Violation>) {
    for &weight in segments {
        if weight.alpha < 1 {
            out.push(Violation::AlphaNotPositive { at, weight });
            continue;
        }
        if !weight.is_coprime() {
            out.push(Violation::WeightNotCoprime { at, weight });
        }
        if !weight.is_normalized() {
            out.push(Violation::WeightNotNormalized { at, weight });
        }
    }
}

/// All legality violations of `y`; empty when the presentation is valid.
pub fn validate(y: &WeightedOrbitSpace) -> Vec<Violation> {
    let mut out = Vec::new();
    let sum = y.index_sum();
    if sum != 0 {
        out.push(Violation::IndexSumNonzero(sum));
    }
    for (i, arc) in y.arcs.iter().enumerate() {
        let at = Component::Arc(i);
        if arc.segments.is_empty() {
            out.push(Violation::EmptySegments(at));
        }
        check_weights(at, &arc.segments, &mut out);
    }
    for (i, circle) in y.circles.iter().enumerate() {
        let at = Component::Circle(i);
        let segments = circle.segments.len();
        if segments == 0 {
            out.push(Violation::EmptySegments(at));
        } else if circle.fixed_point_count == 0 && segments != 1 {
            out.push(Violation::SimplyWeightedSegments { at, segments });
        } else if circle.fixed_point_count > 0 && circle.fixed_point_count != segments {
            out.push(Violation::FixedPointCountMismatch {
                at,
                fixed_points: circle.fixed_point_count,
                segments,
            });
        }
        check_weights(at, &circle.segments, &mut out);
    }
    match (&y.pic_t, &y.euler_class) {
        (None, Some(_)) => out.push(Violation::EulerClassWithoutGroup),
        (Some(p), Some(c)) if c.len() != p.generators() => out.push(Violation::EulerClassArity {
            expected: p.generators(),
            found: c.len(),
        }),
        _ => {}
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointSummary {
    /// Isolated fixed points of the action, including those on arcs and on
    /// multiply-weighted circles.
    pub isolated_total: usize,
    /// Genera of the fixed surfaces.
    pub surfaces: Vec<u32>,
}

pub fn fixed_point_summary(y: &WeightedOrbitSpace) -> FixedPointSummary {
    let isolated_total = y.isolated.len()
        + y.arcs.iter().map(WeightedArc::fixed_points).sum::<usize>()
        + y.circles.iter().map(|c| c.fixed_point_count).sum::<usize>();
    FixedPointSummary {
        isolated_total,
        surfaces: y.boundaries.iter().map(|b| b.genus).collect(),
    }
}

/// `chi(X) = chi(F)`, the Euler characteristic of the fixed point set.
pub fn euler_characteristic(y: &WeightedOrbitSpace) -> i64 {
    let summary = fixed_point_summary(y);
    summary.isolated_total as i64
        + summary
            .surfaces
            .iter()
            .map(|&g| 2 - 2 * i64::from(g))
            .sum::<i64>()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BettiData {
    pub chi_x: i64,
    pub b1_x: i64,
    pub b2_x: i64,
    pub b_plus: i64,
    pub b_minus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("inconsistent Betti data: chi = {chi}, b1 = {b1} give b2 = {b2}, which cannot carry b+ = {b_plus}")]
    InconsistentBetti { chi: i64, b1: i64, b2: i64, b_plus: i64 },
    #[error("invalid presentation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// Betti numbers of `X` from `chi(X) = 2 - 2 b1 + b2` and `b1(X) = b1(Y)`,
/// with the caller's `b_plus` splitting `b2`.
pub fn betti_data(y: &WeightedOrbitSpace, b_plus: u32) -> Result<BettiData, OrbitError> {
    let chi_x = euler_characteristic(y);
    let b1_x = i64::from(y.b1_y);
    let b2_x = chi_x - 2 + 2 * b1_x;
    let b_plus = i64::from(b_plus);
    let b_minus = b2_x - b_plus;
    if b2_x < 0 || b_minus < 0 {
        return Err(OrbitError::InconsistentBetti {
            chi: chi_x,
            b1: b1_x,
            b2: b2_x,
            b_plus,
        });
    }
    Ok(BettiData {
        chi_x,
        b1_x,
        b2_x,
        b_plus,
        b_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(indices: &[i64]) -> Vec<IsolatedFixedPoint> {
        indices.iter().map(|&index| IsolatedFixedPoint { index }).collect()
    }

    #[test]
    fn s4_is_valid() {
        assert!(validate(&WeightedOrbitSpace::s4()).is_empty());
    }

    #[test]
    fn unbalanced_index() {
        let mut y = WeightedOrbitSpace::empty("y", 0);
        y.isolated = pts(&[1]);
        assert_eq!(validate(&y), vec![Violation::IndexSumNonzero(1)]);
    }

    #[test]
    fn non_coprime_weight() {
        let mut y = WeightedOrbitSpace::empty("y", 0);
        y.arcs.push(WeightedArc {
            segments: vec![Weight::new(4, 2)],
            index: 0,
        });
        assert_eq!(
            validate(&y),
            vec![Violation::WeightNotCoprime {
                at: Component::Arc(0),
                weight: Weight { alpha: 4, beta: 2 }
            }]
        );
    }

    #[test]
    fn raw_weights_flagged() {
        let mut y = WeightedOrbitSpace::empty("y", 0);
        y.circles.push(WeightedCircle::simple(Weight { alpha: 5, beta: 7 }, 0));
        y.circles.push(WeightedCircle::simple(Weight { alpha: 0, beta: 1 }, 0));
        let v = validate(&y);
        assert!(matches!(v[0], Violation::WeightNotNormalized { .. }));
        assert!(matches!(v[1], Violation::AlphaNotPositive { .. }));
        assert_eq!(Weight::new(5, 7), Weight { alpha: 5, beta: 2 });
        assert_eq!(Weight::new(5, -3), Weight { alpha: 5, beta: 2 });
    }

    #[test]
    fn circle_shapes() {
        let mut y = WeightedOrbitSpace::empty("y", 0);
        y.circles.push(WeightedCircle {
            segments: vec![Weight::new(2, 1), Weight::new(3, 1)],
            fixed_point_count: 0,
            index: 0,
        });
        y.circles.push(WeightedCircle {
            segments: vec![Weight::new(2, 1), Weight::new(3, 1)],
            fixed_point_count: 3,
            index: 0,
        });
        y.circles.push(WeightedCircle {
            segments: vec![],
            fixed_point_count: 0,
            index: 0,
        });
        assert_eq!(
            validate(&y),
            vec![
                Violation::SimplyWeightedSegments { at: Component::Circle(0), segments: 2 },
                Violation::FixedPointCountMismatch {
                    at: Component::Circle(1),
                    fixed_points: 3,
                    segments: 2
                },
                Violation::EmptySegments(Component::Circle(2)),
            ]
        );
    }

    #[test]
    fn summaries() {
        let mut y = WeightedOrbitSpace::empty("y", 0);
        y.isolated = pts(&[1, -1]);
        assert_eq!(
            fixed_point_summary(&y),
            FixedPointSummary { isolated_total: 2, surfaces: vec![] }
        );

        let mut y = WeightedOrbitSpace::empty("y", 0);
        y.arcs.push(WeightedArc {
            segments: vec![Weight::new(2, 1), Weight::new(3, 1), Weight::new(5, 2)],
            index: 0,
        });
        assert_eq!(fixed_point_summary(&y).isolated_total, 4);

        let mut y = WeightedOrbitSpace::empty("y", 0);
        y.boundaries.push(BoundarySurface { genus: 2, index: 0 });
        assert_eq!(
            fixed_point_summary(&y),
            FixedPointSummary { isolated_total: 0, surfaces: vec![2] }
        );
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&WeightedOrbitSpace::s4()), 2);
        assert_eq!(euler_characteristic(&WeightedOrbitSpace::empty("y", 3)), 0);
        for n in 0..5 {
            for g in 0..4u32 {
                let mut y = WeightedOrbitSpace::empty("y", 0);
                y.isolated = pts(&vec![1; n]);
                y.boundaries.push(BoundarySurface { genus: g, index: -(n as i64) });
                assert_eq!(euler_characteristic(&y), n as i64 + 2 - 2 * i64::from(g));
            }
        }
    }

    #[test]
    fn betti_examples() {
        let s4 = betti_data(&WeightedOrbitSpace::s4(), 0).unwrap();
        assert_eq!(
            s4,
            BettiData { chi_x: 2, b1_x: 0, b2_x: 0, b_plus: 0, b_minus: 0 }
        );

        let mut y = WeightedOrbitSpace::empty("y", 1);
        y.isolated = pts(&[1, 1, -1, -1]);
        let b = betti_data(&y, 2).unwrap();
        assert_eq!((b.chi_x, b.b2_x, b.b_minus), (4, 4, 2));

        assert!(matches!(
            betti_data(&WeightedOrbitSpace::s4(), 1),
            Err(OrbitError::InconsistentBetti { b2: 0, .. })
        ));
    }

    #[test]
    fn fixed_point_detection() {
        assert!(WeightedOrbitSpace::s4().has_fixed_points());
        let mut y = WeightedOrbitSpace::empty("y", 1);
        y.circles.push(WeightedCircle::simple(Weight::new(3, 1), 0));
        assert!(!y.has_fixed_points());
        y.boundaries.push(BoundarySurface { genus: 1, index: 0 });
        assert!(y.has_fixed_points());
    }
}
