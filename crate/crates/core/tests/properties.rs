mod common;

use std::sync::Arc;

use ffvc::pac::{draw_sample_seeded, empirical_errors, erm_learn, LearningTask};
use ffvc::vc::{dichotomy_patterns, ClassKind, Hypothesis};
use ffvc::{DistanceGraph, FieldParams, Geometry, PointId, PointSet, Space};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (u32, usize, u32)> {
    (prop::sample::select(vec![3u32, 5, 7]), 2usize..=3).prop_flat_map(|(q, d)| (Just(q), Just(d), 1..q))
}

fn subset(n: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), n)
}

fn set_from(mask: &[bool]) -> PointSet {
    PointSet::from_ids(mask.len(), (0..mask.len()).filter(|&i| mask[i]).map(|i| PointId(i as u32))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_symmetric_and_translation_invariant((q, d, t) in instance(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let space = Space::new(FieldParams::new(q, d, t).unwrap());
        let n = space.len() as u32;
        let (a, b, c) = (PointId(a % n), PointId(b % n), PointId(c % n));
        prop_assert_eq!(space.dist(a, b), space.dist(b, a));
        prop_assert_eq!(space.dist(a, b), space.dist(space.sum(a, c), space.sum(b, c)));
        prop_assert_eq!(space.dist(a, b), common::dist(&common::decode(a.index(), q, d), &common::decode(b.index(), q, d), q));
    }

    #[test]
    fn set_algebra_matches_masks(a in subset(125), b in subset(125)) {
        let (x, y) = (set_from(&a), set_from(&b));
        let and: Vec<bool> = a.iter().zip(&b).map(|(p, q)| *p && *q).collect();
        let or: Vec<bool> = a.iter().zip(&b).map(|(p, q)| *p || *q).collect();
        let minus: Vec<bool> = a.iter().zip(&b).map(|(p, q)| *p && !*q).collect();
        prop_assert_eq!(x.intersection(&y), set_from(&and));
        prop_assert_eq!(x.union(&y), set_from(&or));
        prop_assert_eq!(x.difference(&y), set_from(&minus));
        prop_assert_eq!(x.intersection_len(&y), and.iter().filter(|&&v| v).count());
        prop_assert_eq!(x.is_subset(&y), minus.iter().all(|&v| !v));
        prop_assert_eq!(x.len(), a.iter().filter(|&&v| v).count());
    }

    #[test]
    fn gamma_one_is_twice_the_edges((q, d, t) in instance(), mask in subset(343)) {
        let p = FieldParams::new(q, d, t).unwrap();
        let set = set_from(&mask[..p.num_points()]);
        let g = DistanceGraph::new(Arc::new(Geometry::new(p)), &set).unwrap();
        let o = common::Oracle::new(q, d, t);
        let ids: Vec<usize> = set.iter().map(|p| p.index()).collect();
        prop_assert_eq!(g.gamma_k(1).unwrap(), o.chains(&ids, 1));
    }

    #[test]
    fn dichotomies_match_literal_evaluation(t in 1u32..5, mask in subset(25), pick in prop::collection::vec(0usize..25, 1..4), one in any::<bool>()) {
        let space = Space::new(FieldParams::new(5, 2, t).unwrap());
        let mut domain = set_from(&mask);
        if domain.len() < 2 {
            domain = PointSet::full(25);
        }
        let ids = domain.to_vec();
        let mut cand: Vec<PointId> = pick.iter().map(|&i| ids[i % ids.len()]).collect();
        cand.sort();
        cand.dedup();
        let kind = if one { ClassKind::OneParam } else { ClassKind::TwoParam };
        let lib = dichotomy_patterns(&domain, &cand, kind, &space).unwrap();
        let mut literal = std::collections::BTreeSet::new();
        for &u in &ids {
            let hs: Vec<Hypothesis> = match kind {
                ClassKind::OneParam => vec![Hypothesis::one_param(u)],
                ClassKind::TwoParam => ids.iter().filter(|&&v| v != u).map(|&v| Hypothesis::two_param(u, v).unwrap()).collect(),
            };
            for h in hs {
                literal.insert(cand.iter().enumerate().fold(0u64, |m, (i, &x)| m | (h.evaluate(x, &space) as u64) << i));
            }
        }
        prop_assert_eq!(lib, literal);
    }

    #[test]
    fn erm_is_consistent_in_the_realizable_case(t in 1u32..5, u in 0u32..25, shift in 1u32..25, m in 0usize..40, seed in any::<u64>()) {
        let geo = Arc::new(Geometry::new(FieldParams::new(5, 2, t).unwrap()));
        let full = PointSet::full(25);
        let target = Hypothesis::two_param(PointId(u), PointId((u + shift) % 25)).unwrap();
        let task = LearningTask::uniform(geo.clone(), full.clone(), target, seed).unwrap();
        let sample = draw_sample_seeded(&task, m, seed);
        let h = erm_learn(&sample, &full, ClassKind::TwoParam, &geo).unwrap();
        prop_assert_eq!(empirical_errors(&h, &sample, &geo), 0);
        prop_assert!(h.belongs_to(&full));
    }
}
