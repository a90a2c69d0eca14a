mod common;

use lcanet_core::canonical::class_order_with;
use lcanet_core::{
    algorithm_real, analyze, canonical_dag, class_order, equivalence_classes, is_regular,
    plus_closure, verify_realizes, Pair,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classes_are_mutual_membership(r in common::relation(5)) {
        let res = plus_closure(&r);
        let part = equivalence_classes(&res);
        let plus = res.closure();
        let supp = r.support_plus();
        for &p in &supp {
            for &q in &supp {
                let same = part.class_of(p) == part.class_of(q);
                prop_assert_eq!(same, plus.contains(p, q) && plus.contains(q, p));
            }
        }
        for p in r.leaf_set().pairs() {
            prop_assert_eq!(part.class_of(p).is_some(), supp.contains(&p));
        }
        for c in part.classes() {
            let members = part.members(c);
            prop_assert_eq!(part.representative(c), *members.iter().min().unwrap());
        }
    }

    #[test]
    fn class_order_is_partial_and_representative_free(r in common::relation(5), seed: u64) {
        let res = plus_closure(&r);
        let part = equivalence_classes(&res);
        let order = class_order(&part, &res);
        prop_assert!(order.is_partial_order());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let other = class_order_with(&part, &res, |c| {
            let m = part.members(c);
            m[rng.random_range(0..m.len())]
        });
        prop_assert_eq!(order, other);
    }

    #[test]
    fn characterization(r in common::relation(6)) {
        let v = analyze(&r).verdict;
        if v.x1_violations.is_empty() {
            let g = canonical_dag(&r).unwrap();
            prop_assert_eq!(verify_realizes(&g, &r).unwrap().ok, v.realizable);
        }
    }

    #[test]
    fn canonical_graphs_order_lcas_like_the_closure(r in common::realizable(5)) {
        let out = algorithm_real(&r);
        let graphs = out.graphs.unwrap();
        let plus = out.closure.closure();
        let plus_rel = plus.clone();
        let supp: Vec<Pair> = r.support_plus().into_iter().collect();
        for h in [&graphs.dag, &graphs.reduced, &graphs.network] {
            prop_assert!(verify_realizes(h, &r).unwrap().ok);
            prop_assert!(verify_realizes(h, &plus_rel).unwrap().ok);
            for &p in &supp {
                for &q in &supp {
                    let (u, v) = (h.lca_unique(p).unwrap(), h.lca_unique(q).unwrap());
                    prop_assert_eq!(h.precedes_eq(u, v), plus.contains(p, q));
                    let strict = u != v && h.precedes_eq(u, v);
                    prop_assert_eq!(strict, plus.contains(p, q) && !plus.contains(q, p));
                }
            }
        }
        prop_assert!(graphs.dag.is_phylogenetic() && graphs.dag.is_two_lca_relevant());
        prop_assert!(is_regular(&graphs.reduced) && graphs.reduced.is_two_lca_relevant());
        prop_assert!(is_regular(&graphs.network) && graphs.network.is_phylogenetic());
    }

    #[test]
    fn class_vertices_point_at_their_leaves(r in common::realizable(5)) {
        let graphs = algorithm_real(&r).graphs.unwrap();
        let (g, part) = (&graphs.dag, &graphs.partition);
        let x = r.leaf_set();
        for c in part.classes() {
            for &p in part.members(c) {
                if !p.is_singleton() {
                    let v = g.vertex(&part.label(c)).unwrap();
                    for leaf in [p.lo(), p.hi()] {
                        prop_assert!(g.has_arc(v, g.vertex(x.name(leaf)).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_dag_depends_only_on_the_closure(r in common::relation(5)) {
        if let Ok(g) = canonical_dag(&r) {
            let plus = plus_closure(&r).into_closure();
            prop_assert!(g.same_labeled_graph(&canonical_dag(&plus).unwrap()));
        }
    }

    #[test]
    fn closed_iff_canonical_dag_displays_exactly(r in common::realizable(4)) {
        let g = canonical_dag(&r).unwrap();
        let closed = plus_closure(&r).closure() == &r;
        let supp: Vec<Pair> = r.support_plus().into_iter().collect();
        let displays = supp.iter().all(|&p| {
            supp.iter().all(|&q| {
                let (u, v) = (g.lca_unique(p).unwrap(), g.lca_unique(q).unwrap());
                r.contains(p, q) == g.precedes_eq(u, v)
            })
        });
        prop_assert_eq!(closed, displays);
    }
}
