//! The individual rewrite rules and terminal analyses of the reduction.

use crate::orbit::{
    betti_data, BoundarySurface, Component, IsolatedFixedPoint, WeightedCircle,
    WeightedOrbitSpace,
};

use super::{PaoBranch, ReduceError, SphereCertificate, SphereKind};

fn circle(y: &WeightedOrbitSpace, circle_id: usize) -> Result<&WeightedCircle, ReduceError> {
    y.circles
        .get(circle_id)
        .ok_or(ReduceError::NoSuchCircle(circle_id))
}

/// Splits off an equivariant connected summand at a fixed point of a weighted
/// circle carrying three or more fixed points.
///
/// `cut_fixed_point = j` names the fixed point between segments `j` and
/// `j + 1`. `Y0` keeps the circle with only the two segments adjacent to the
/// cut, and its index. `N1` is `S^3` containing the circle with all of its
/// original weights, trivially embedded and of index 0.
pub fn split_circle(
    y: &WeightedOrbitSpace,
    circle_id: usize,
    cut_fixed_point: usize,
) -> Result<(WeightedOrbitSpace, WeightedOrbitSpace), ReduceError> {
    let c = circle(y, circle_id)?;
    let m = c.fixed_point_count;
    if m == 0 {
        return Err(ReduceError::NotMultiplyWeighted(circle_id));
    }
    if m < 3 {
        return Err(ReduceError::TooFewFixedPoints { circle: circle_id, count: m });
    }
    if cut_fixed_point >= m {
        return Err(ReduceError::CutPointOutOfRange {
            circle: circle_id,
            cut: cut_fixed_point,
            count: m,
        });
    }

    let mut y0 = y.clone();
    y0.circles[circle_id] = WeightedCircle::multiple(
        vec![c.segments[cut_fixed_point], c.segments[(cut_fixed_point + 1) % m]],
        c.index,
    );

    let mut n1 = WeightedOrbitSpace::empty(format!("{}/N", y.name), 0);
    n1.circles.push(WeightedCircle::multiple(c.segments.clone(), 0));
    Ok((y0, n1))
}

/// Replaces a weighted circle with exactly two fixed points.
///
/// Branch A trades the circle for two isolated fixed points of index `+1`
/// and `-1`, which requires the circle to have index 0. Branch B deletes the
/// circle together with a ball, leaving a new sphere boundary component that
/// inherits the circle's index.
pub fn pao_replace(
    y: &WeightedOrbitSpace,
    circle_id: usize,
    branch: PaoBranch,
) -> Result<WeightedOrbitSpace, ReduceError> {
    let c = circle(y, circle_id)?;
    if c.fixed_point_count != 2 {
        return Err(ReduceError::WrongFixedPointCount {
            circle: circle_id,
            count: c.fixed_point_count,
        });
    }
    let index = c.index;
    let mut out = y.clone();
    match branch {
        PaoBranch::A => {
            if index != 0 {
                return Err(ReduceError::IndexUnassignable { circle: circle_id, index });
            }
            out.circles.remove(circle_id);
            out.isolated.push(IsolatedFixedPoint { index: 1 });
            out.isolated.push(IsolatedFixedPoint { index: -1 });
        }
        PaoBranch::B => {
            out.circles.remove(circle_id);
            out.boundaries.push(BoundarySurface { genus: 0, index });
        }
    }
    Ok(out)
}

/// The preimage of an arc joining two boundary components is a sphere of
/// square zero.
pub fn find_boundary_arc_sphere(y: &WeightedOrbitSpace) -> Option<SphereCertificate> {
    (y.boundaries.len() >= 2).then(|| SphereCertificate {
        kind: SphereKind::BoundaryToBoundaryArc,
        self_intersection: 0,
        components: vec![Component::Boundary(0), Component::Boundary(1)],
        justification: format!(
            "preimage of an arc from boundary 0 (genus {}) to boundary 1 (genus {}); \
             the two fixed surfaces are distinct, so the sphere is essential",
            y.boundaries[0].genus, y.boundaries[1].genus
        ),
    })
}

/// Betti arithmetic of the one-boundary configuration: `n` isolated fixed
/// points of index `+1`, one boundary of genus `g` with index `-n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneBoundaryData {
    pub n: i64,
    pub genus: i64,
    pub b2: i64,
    pub b1: i64,
}

/// Checks `b2 > n` (the spheres over arcs from each fixed point to the
/// boundary span an `n`-dimensional negative definite sublattice, and the
/// form is not negative definite) and returns `b1 = (b2 - n + 2g) / 2`.
pub fn one_boundary_arithmetic(n: i64, genus: i64, b2: i64) -> Result<OneBoundaryData, ReduceError> {
    if b2 <= n {
        return Err(ReduceError::NotEnoughTopology { b2, n });
    }
    let twice_b1 = b2 - n + 2 * genus;
    if twice_b1 % 2 != 0 {
        return Err(ReduceError::ParityViolation { b2, n, genus });
    }
    Ok(OneBoundaryData {
        n,
        genus,
        b2,
        b1: twice_b1 / 2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneBoundaryOutcome {
    pub data: OneBoundaryData,
    pub certificate: SphereCertificate,
}

/// Terminal analysis when `Y` has a single boundary component.
pub fn one_boundary_analysis(
    y: &WeightedOrbitSpace,
    b_plus: u32,
) -> Result<OneBoundaryOutcome, ReduceError> {
    let [boundary] = y.boundaries.as_slice() else {
        return Err(ReduceError::PreconditionViolated(format!(
            "expected exactly one boundary component, found {}",
            y.boundaries.len()
        )));
    };
    if !y.arcs.is_empty() || y.multiply_weighted_circles().next().is_some() {
        return Err(ReduceError::PreconditionViolated(
            "only simply-weighted circles may accompany the isolated fixed points".into(),
        ));
    }
    let n = y.isolated.len() as i64;
    if y.isolated.iter().any(|p| p.index != 1) || boundary.index != -n {
        return Err(ReduceError::PreconditionViolated(format!(
            "expected {n} isolated fixed points of index +1 and boundary index {}",
            -n
        )));
    }
    if b_plus == 0 {
        return Err(ReduceError::PreconditionViolated("b+ must be positive".into()));
    }
    let betti = betti_data(y, b_plus)?;
    let genus = i64::from(boundary.genus);
    let data = one_boundary_arithmetic(n, genus, betti.b2_x)?;
    debug_assert_eq!(data.b1, betti.b1_x);
    if i64::from(y.b1_y) <= genus {
        return Err(ReduceError::NotEnoughTopology { b2: betti.b2_x, n });
    }
    let certificate = SphereCertificate {
        kind: SphereKind::ArcFixedPointToBoundary,
        self_intersection: 0,
        components: vec![Component::Boundary(0)],
        justification: format!(
            "b1(Y) = {} > g = {genus}, so H1(Y, F) has a loop that is not a multiple of the \
             Euler class; its preimage is an essential torus of square 0, homologous to the \
             sphere over an arc with both ends on the boundary",
            y.b1_y
        ),
    };
    Ok(OneBoundaryOutcome { data, certificate })
}

/// Encloses all weighted arcs and isolated fixed points in a ball. The
/// boundary sphere has Euler number equal to the enclosed index sum; when it
/// is zero the manifold is the fiber sum of a fixed-point-free `X1` with a
/// simply connected `N` whose quotient is `S^3`.
pub fn ball_fiber_sum_split(
    y: &WeightedOrbitSpace,
) -> Result<(WeightedOrbitSpace, WeightedOrbitSpace), ReduceError> {
    if let Some((i, _)) = y.multiply_weighted_circles().next() {
        return Err(ReduceError::MultiplyWeightedCirclePresent(i));
    }
    if !y.boundaries.is_empty() {
        return Err(ReduceError::BoundaryPresent);
    }
    let enclosed: i64 = y.arcs.iter().map(|a| a.index).sum::<i64>()
        + y.isolated.iter().map(|p| p.index).sum::<i64>();
    if enclosed != 0 {
        return Err(ReduceError::EnclosedIndexNonzero(enclosed));
    }

    let mut x1 = y.clone();
    x1.name = format!("{}/X1", y.name);
    x1.arcs.clear();
    x1.isolated.clear();

    let mut n = WeightedOrbitSpace::empty(format!("{}/N", y.name), 0);
    n.arcs = y.arcs.clone();
    n.isolated = y.isolated.clone();
    Ok((x1, n))
}

/// Terminal analysis for two isolated fixed points of index `+1` and `-1`.
///
/// `b+ > 0` forces `b1(X) > 0` since `chi(X) = 2`, and `b1(Y) = b1(X)`. The
/// boundary of the Euler class in `H0(F)` is `(1, -1)`, so some loop is not a
/// multiple of it; its preimage is an essential torus that splits along the
/// two fixed points into two spheres of square 0, one of them essential.
pub fn final_two_fixed_points(
    y: &WeightedOrbitSpace,
    b_plus: u32,
) -> Result<SphereCertificate, ReduceError> {
    let mut indices: Vec<i64> = y.isolated.iter().map(|p| p.index).collect();
    indices.sort_unstable();
    if indices != [-1, 1] {
        return Err(ReduceError::PreconditionViolated(format!(
            "expected isolated fixed points of index +1 and -1, found {indices:?}"
        )));
    }
    if !y.arcs.is_empty()
        || !y.boundaries.is_empty()
        || y.multiply_weighted_circles().next().is_some()
    {
        return Err(ReduceError::PreconditionViolated(
            "only simply-weighted circles may accompany the two fixed points".into(),
        ));
    }
    if b_plus == 0 {
        return Err(ReduceError::PreconditionViolated("b+ must be positive".into()));
    }
    if y.b1_y == 0 {
        return Err(ReduceError::B1NotPositive { b_plus });
    }
    Ok(SphereCertificate {
        kind: SphereKind::ArcBetweenTwoFixedPoints,
        self_intersection: 0,
        components: vec![Component::Isolated(0), Component::Isolated(1)],
        justification: format!(
            "b1(Y) = {} > 0 and the Euler class has boundary (1, -1); a loop not a multiple \
             of it lifts to an essential torus of square 0 splitting into spheres over two \
             arcs between the fixed points, one of which is essential",
            y.b1_y
        ),
    })
}
