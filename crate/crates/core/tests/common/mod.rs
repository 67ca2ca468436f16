//! Random legal presentations for the integration and acceptance tests.

#![allow(dead_code)]

use num_integer::Integer;
use rand::Rng;

use orbitsw::orbit::{
    euler_characteristic, BoundarySurface, IsolatedFixedPoint, Weight, WeightedArc,
    WeightedCircle, WeightedOrbitSpace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Index-0 multiply weighted circles, arcs and `±1` point pairs; reduces
    /// through the ball fiber sum.
    Ball,
    /// Two or more boundaries, possibly after Pao replacement.
    Boundaries,
    /// `n` points of index `+1` around a single boundary of index `-n`,
    /// possibly still hidden inside a circle.
    OneBoundary,
}

pub const FAMILIES: [Family; 3] = [Family::Ball, Family::Boundaries, Family::OneBoundary];

pub fn weight<R: Rng>(rng: &mut R) -> Weight {
    loop {
        let alpha = rng.gen_range(2..14i64);
        let beta = rng.gen_range(-30..30i64);
        if alpha.gcd(&beta) == 1 {
            return Weight::new(alpha, beta);
        }
    }
}

fn weights<R: Rng>(rng: &mut R, n: usize) -> Vec<Weight> {
    (0..n).map(|_| weight(rng)).collect()
}

fn arc<R: Rng>(rng: &mut R, index: i64) -> WeightedArc {
    let s = rng.gen_range(1..4);
    WeightedArc {
        segments: weights(rng, s),
        index,
    }
}

fn multi_circle<R: Rng>(rng: &mut R, index: i64) -> WeightedCircle {
    let m = rng.gen_range(2..6);
    WeightedCircle::multiple(weights(rng, m), index)
}

fn simple_circles<R: Rng>(rng: &mut R, y: &mut WeightedOrbitSpace) {
    for _ in 0..rng.gen_range(0..3) {
        let w = weight(rng);
        y.circles.push(WeightedCircle::simple(w, 0));
    }
}

pub fn presentation<R: Rng>(rng: &mut R, family: Family, b1_y: u32) -> WeightedOrbitSpace {
    let mut y = WeightedOrbitSpace::empty(format!("{family:?}").to_lowercase(), b1_y);
    match family {
        Family::Ball => {
            for _ in 0..rng.gen_range(0..3) {
                let c = multi_circle(rng, 0);
                y.circles.push(c);
            }
            let mut sum = 0;
            for _ in 0..rng.gen_range(0..3) {
                let index = rng.gen_range(-3..=3);
                sum += index;
                let a = arc(rng, index);
                y.arcs.push(a);
            }
            for _ in 0..rng.gen_range(0..3) {
                y.isolated.push(IsolatedFixedPoint { index: 1 });
                y.isolated.push(IsolatedFixedPoint { index: -1 });
            }
            if sum != 0 || !y.has_fixed_points() {
                let a = arc(rng, -sum);
                y.arcs.push(a);
            }
            simple_circles(rng, &mut y);
        }
        Family::Boundaries => {
            let mut sum = 0;
            let boundaries = rng.gen_range(0..4);
            let circles = if boundaries < 2 { 2 - boundaries + rng.gen_range(0..2) } else { rng.gen_range(0..2) };
            for _ in 0..circles {
                let index = rng.gen_range(-4..=4);
                sum += index;
                let c = multi_circle(rng, index);
                y.circles.push(c);
            }
            for _ in 0..rng.gen_range(0..3) {
                let index = rng.gen_range(-2..=2);
                sum += index;
                let a = arc(rng, index);
                y.arcs.push(a);
            }
            for _ in 0..rng.gen_range(0..4) {
                let index = if rng.gen_bool(0.5) { 1 } else { -1 };
                sum += index;
                y.isolated.push(IsolatedFixedPoint { index });
            }
            for i in 0..boundaries {
                let index = if i + 1 == boundaries { -sum } else { rng.gen_range(-3..=3) };
                sum += index;
                y.boundaries.push(BoundarySurface {
                    genus: rng.gen_range(0..3),
                    index,
                });
            }
            if sum != 0 {
                // only reachable with no explicit boundary: push the imbalance
                // onto the last circle, which Pao turns into a boundary anyway
                let last = y.circles.last_mut().expect("at least two circles");
                last.index -= sum;
            }
            simple_circles(rng, &mut y);
        }
        Family::OneBoundary => {
            let n = rng.gen_range(0..5i64);
            y.isolated = (0..n).map(|_| IsolatedFixedPoint { index: 1 }).collect();
            if rng.gen_bool(0.5) {
                let c = multi_circle(rng, -n);
                y.circles.push(c);
            } else {
                y.boundaries.push(BoundarySurface {
                    genus: rng.gen_range(0..3),
                    index: -n,
                });
            }
            if !y.has_fixed_points() {
                y.circles.push(multi_circle(rng, 0));
            }
            simple_circles(rng, &mut y);
        }
    }
    y
}

/// Genus of the surface a one-boundary presentation ends up with.
fn final_genus(y: &WeightedOrbitSpace) -> u32 {
    y.boundaries.iter().map(|b| b.genus).max().unwrap_or(0)
}

/// A presentation together with a `b+` for which the Betti data is
/// consistent and the geometry is realizable (`b+ >= 1`).
pub fn consistent_case<R: Rng>(rng: &mut R) -> (WeightedOrbitSpace, u32) {
    loop {
        let family = FAMILIES[rng.gen_range(0..FAMILIES.len())];
        let b1 = rng.gen_range(0..4);
        let mut y = presentation(rng, family, b1);
        if family == Family::OneBoundary {
            let g = final_genus(&y);
            if y.b1_y <= g {
                y.b1_y = g + 1 + rng.gen_range(0..2);
            }
        }
        let chi = euler_characteristic(&y);
        let b2 = chi - 2 + 2 * i64::from(y.b1_y);
        // arcs from the +1 points to a lone boundary carry spheres of square -1
        let cap = if family == Family::OneBoundary {
            b2 - y.isolated.len() as i64
        } else {
            b2
        };
        if cap < 1 {
            continue;
        }
        let b_plus = rng.gen_range(1..=cap) as u32;
        return (y, b_plus);
    }
}
