mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbitsw::abelian::{
    cyclic_membership, divisibility_chain_holds, smith_normal_form, FgAbelianGroup, GroupElement,
    GroupPresentation, IntMatrix,
};
use orbitsw::io::{canonicalize, parse, serialize, trace_to_dot};
use orbitsw::orbit::{betti_data, euler_characteristic, validate, Weight, WeightedOrbitSpace};
use orbitsw::reduce::{reduce, ReductionTrace, Verdict};
use orbitsw::sw::{sw_pullback_sum, Sw3Table};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1..=5usize, 1..=5usize).prop_flat_map(|(r, c)| {
        prop::collection::vec(-10i64..=10, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(c, &rows).unwrap()
        })
    })
}

/// A random legal presentation, sometimes carrying a `[pic_t]` block.
fn presentation(seed: u64) -> WeightedOrbitSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = common::FAMILIES[rng.gen_range(0..3)];
    let b1 = rng.gen_range(0..4);
    let mut y = common::presentation(&mut rng, family, b1);
    if rng.gen_bool(0.5) {
        let gens = rng.gen_range(1..=3);
        let rels: Vec<Vec<i64>> = (0..rng.gen_range(0..=3))
            .map(|_| (0..gens).map(|_| rng.gen_range(-6..=6)).collect())
            .collect();
        y.pic_t = Some(GroupPresentation::new(gens, IntMatrix::from_rows(gens, &rels).unwrap()).unwrap());
        if rng.gen_bool(0.5) {
            y.euler_class = Some((0..gens).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect());
        }
    }
    y
}

fn group() -> impl Strategy<Value = Arc<FgAbelianGroup>> {
    (0..=2usize, prop::collection::vec(2u64..=6, 0..=2)).prop_map(|(free, ms)| {
        let mut factors = Vec::new();
        let mut d = BigInt::from(1);
        for m in ms {
            d *= m;
            factors.push(d.clone());
        }
        Arc::new(FgAbelianGroup::new(free, factors).unwrap())
    })
}

fn element(g: &Arc<FgAbelianGroup>, raw: &[i64]) -> GroupElement {
    let free: Vec<i64> = raw.iter().take(g.free_rank()).copied().collect();
    let tors: Vec<i64> = raw
        .iter()
        .skip(g.free_rank())
        .take(g.invariant_factors().len())
        .copied()
        .collect();
    GroupElement::from_i64(g, &free, &tors).unwrap()
}

fn dot_edges(dot: &str) -> Vec<(String, String)> {
    dot.lines()
        .filter_map(|l| {
            let (lhs, rhs) = l.trim().split_once(" -> ")?;
            let rhs = rhs.split_whitespace().next()?.trim_end_matches(';');
            Some((lhs.to_string(), rhs.to_string()))
        })
        .collect()
}

fn is_acyclic(edges: &[(String, String)]) -> bool {
    let mut indegree: BTreeMap<&str, usize> = BTreeMap::new();
    for (a, b) in edges {
        indegree.entry(a).or_default();
        *indegree.entry(b).or_default() += 1;
    }
    let mut ready: Vec<&str> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&n, _)| n).collect();
    let mut seen = 0;
    while let Some(n) = ready.pop() {
        seen += 1;
        for (a, b) in edges {
            if a == n {
                let d = indegree.get_mut(b.as_str()).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(b);
                }
            }
        }
    }
    seen == indegree.len()
}

proptest! {
    #[test]
    fn smith_transforms_certify(a in matrix()) {
        let s = smith_normal_form(&a);
        prop_assert!(s.certifies(&a));
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert!(divisibility_chain_holds(&s.d));
    }

    #[test]
    fn smith_is_idempotent_on_its_output(a in matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(smith_normal_form(&s.diagonal_matrix()).d, s.d);
    }

    #[test]
    fn smith_ignores_transpose(a in matrix()) {
        prop_assert_eq!(smith_normal_form(&a).d, smith_normal_form(&a.transpose()).d);
    }

    #[test]
    fn group_laws(g in group(), x in prop::collection::vec(-20i64..20, 4),
                  y in prop::collection::vec(-20i64..20, 4), z in prop::collection::vec(-20i64..20, 4)) {
        let (x, y, z) = (element(&g, &x), element(&g, &y), element(&g, &z));
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        prop_assert!(x.add(&x.negate()).unwrap().is_identity());
        prop_assert_eq!(x.sub(&y).unwrap().add(&y).unwrap(), x);
    }

    #[test]
    fn multiples_are_members(g in group(), x in prop::collection::vec(-20i64..20, 4), k in -30i64..30) {
        let x = element(&g, &x);
        let y = x.scale(&BigInt::from(k));
        let found = cyclic_membership(&x, &y).unwrap();
        prop_assert!(found.is_some());
        prop_assert_eq!(x.scale(&found.unwrap()), y);
    }

    #[test]
    fn coset_sum_is_constant_on_the_coset(g in group(), chi in prop::collection::vec(-5i64..5, 4),
                                          xi0 in prop::collection::vec(-5i64..5, 4), k in -4i64..4,
                                          keys in prop::collection::vec((prop::collection::vec(-8i64..8, 4), -9i64..9), 0..20)) {
        let chi = element(&g, &chi);
        let xi0 = element(&g, &xi0);
        let mut table = Sw3Table::new(g.clone());
        for (raw, v) in keys {
            let _ = table.insert(element(&g, &raw), BigInt::from(v));
        }
        let shifted = xi0.add(&chi.scale(&BigInt::from(k))).unwrap();
        prop_assert_eq!(
            sw_pullback_sum(&g, &chi, &xi0, &table).unwrap(),
            sw_pullback_sum(&g, &chi, &shifted, &table).unwrap()
        );
    }

    #[test]
    fn weight_normalization(alpha in 1i64..40, beta in -100i64..100, k in -5i64..5) {
        let w = Weight::new(alpha, beta);
        prop_assert!(w.is_normalized());
        prop_assert_eq!(Weight::new(alpha, beta + k * alpha), w);
    }

    #[test]
    fn generated_presentations_are_legal(seed in any::<u64>()) {
        let y = presentation(seed);
        prop_assert_eq!(validate(&y), vec![]);
        prop_assert_eq!(validate(&canonicalize(&y)), vec![]);
    }

    #[test]
    fn serialize_then_parse_round_trips(seed in any::<u64>()) {
        let y = canonicalize(&presentation(seed));
        let text = serialize(&y);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &y);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn euler_characteristic_is_additive(a in any::<u64>(), b in any::<u64>()) {
        let (ya, yb) = (presentation(a), presentation(b));
        let mut both = ya.clone();
        both.arcs.extend(yb.arcs.iter().cloned());
        both.circles.extend(yb.circles.iter().cloned());
        both.isolated.extend(yb.isolated.iter().cloned());
        both.boundaries.extend(yb.boundaries.iter().cloned());
        prop_assert_eq!(euler_characteristic(&both), euler_characteristic(&ya) + euler_characteristic(&yb));
    }

    #[test]
    fn betti_identities(seed in any::<u64>(), b_plus in 0u32..8) {
        let y = presentation(seed);
        if let Ok(b) = betti_data(&y, b_plus) {
            prop_assert_eq!(b.b2_x, b.b_plus + b.b_minus);
            prop_assert_eq!(b.chi_x, 2 - 2 * b.b1_x + b.b2_x);
            prop_assert!(b.b_minus >= 0 && b.b2_x >= 0);
        }
    }

    #[test]
    fn reduction_reaches_a_sphere(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (y, b_plus) = common::consistent_case(&mut rng);
        let (verdict, trace) = reduce(&y, b_plus).unwrap();
        prop_assert!(trace.steps.len() <= ReductionTrace::step_bound(&y));
        prop_assert!(!matches!(verdict, Verdict::OutOfScope(_)));
        prop_assert!(verdict.self_intersection().unwrap() >= 0);
        for step in &trace.steps {
            prop_assert_eq!(validate(&step.after), vec![]);
        }
        for s in &trace.summands {
            prop_assert_eq!(validate(&s.presentation), vec![]);
        }
    }

    #[test]
    fn dot_output_is_a_dag(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (y, b_plus) = common::consistent_case(&mut rng);
        let (_, trace) = reduce(&y, b_plus).unwrap();
        let dot = trace_to_dot(&trace, &y);
        let edges = dot_edges(&dot);
        prop_assert_eq!(edges.len(), trace.steps.len());
        prop_assert!(is_acyclic(&edges));
        let nodes: BTreeSet<&str> = edges.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()]).collect();
        let declared = nodes.iter().all(|n| dot.contains(&format!("  {} [", n)));
        prop_assert!(declared);
    }
}
