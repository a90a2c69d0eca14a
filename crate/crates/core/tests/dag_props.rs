mod common;

use fixedbitset::FixedBitSet;
use lcanet_core::oracle::naive_reachability;
use lcanet_core::{
    extract_leq, extract_strict, plus_closure, verify_realizes, verify_strictly_realizes,
    vertex_clusters, Dag, VertexId,
};
use proptest::prelude::*;

/// Common ancestors of `a` and `b` with no other common ancestor below them.
fn brute_lca(g: &Dag, a: VertexId, b: VertexId) -> Vec<VertexId> {
    let reach = naive_reachability(g);
    let common: Vec<VertexId> = g
        .vertices()
        .filter(|u| reach[u.index()][a.index()] && reach[u.index()][b.index()])
        .collect();
    common
        .iter()
        .copied()
        .filter(|&u| {
            !common
                .iter()
                .any(|&w| w != u && reach[u.index()][w.index()])
        })
        .collect()
}

proptest! {
    #[test]
    fn ancestry_matches_search(g in common::dag(6)) {
        let reach = naive_reachability(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(g.is_ancestor(u, v).unwrap(), reach[u.index()][v.index()]);
            }
        }
    }

    #[test]
    fn lca_sets_match_brute_force(g in common::dag(6)) {
        let x = g.leaf_set().clone();
        for p in x.pairs() {
            let mut fast = g.lca_set(&[p.lo(), p.hi()]).unwrap();
            fast.sort();
            let slow = brute_lca(&g, g.leaf_vertex(p.lo()), g.leaf_vertex(p.hi()));
            prop_assert_eq!(&fast, &slow);
            let unique = if slow.len() == 1 { Some(slow[0]) } else { None };
            prop_assert_eq!(g.lca_unique(p), unique);
        }
    }

    #[test]
    fn clusters_grow_upwards(g in common::dag(6)) {
        let cs = vertex_clusters(&g);
        for v in g.vertices() {
            for w in g.vertices() {
                if g.precedes_eq(w, v) {
                    prop_assert!(cs[w.index()].is_subset(&cs[v.index()]));
                }
            }
            if let Some(leaf) = g.vertex_leaf(v) {
                prop_assert_eq!(cs[v.index()].len(), 1);
                prop_assert!(cs[v.index()].contains(leaf));
            }
        }
    }

    #[test]
    fn reduction_preserves_reachability(g in common::dag(6)) {
        let red = g.transitive_reduction();
        prop_assert_eq!(naive_reachability(&red), naive_reachability(&g));
        prop_assert!(red.is_shortcut_free());
        prop_assert!(red.transitive_reduction().same_labeled_graph(&red));
        for p in g.leaf_set().pairs() {
            if let Some(v) = g.lca_unique(p) {
                prop_assert_eq!(red.lca_unique(p), Some(v));
            }
        }
    }

    #[test]
    fn extracted_relations(g in common::dag(6)) {
        let (leq, lt) = (extract_leq(&g), extract_strict(&g));
        prop_assert_eq!(plus_closure(&leq).into_closure(), leq.clone());
        prop_assert_eq!(plus_closure(&lt).into_closure(), leq.clone());
        prop_assert!(lt.is_subset(&leq).unwrap());
        prop_assert!(lt.iter().all(|(p, q)| p != q));
        prop_assert!(verify_realizes(&g, &leq).unwrap().ok);
        prop_assert!(verify_strictly_realizes(&g, &lt).unwrap().ok);
    }

    #[test]
    fn realization_ignores_transitive_closure((g, r) in common::strict_part(5), seed: u64) {
        let sub = common::sub_relation(&extract_leq(&g), seed);
        for rel in [r, sub] {
            prop_assert_eq!(
                verify_realizes(&g, &rel).unwrap().ok,
                verify_realizes(&g, &rel.transitive_closure()).unwrap().ok
            );
        }
    }

    #[test]
    fn strict_and_weak_extractions_determine_each_other(
        g in common::dag(4),
        h in common::dag(4),
    ) {
        if g.leaf_set() == h.leaf_set() {
            prop_assert_eq!(
                extract_strict(&g) == extract_strict(&h),
                extract_leq(&g) == extract_leq(&h)
            );
            let red = g.transitive_reduction();
            prop_assert_eq!(extract_strict(&g), extract_strict(&red));
        }
    }
}

#[test]
fn reachability_cache_is_the_search_result() {
    let g = lcanet_core::oracle::random_dag(&lcanet_core::oracle::RandomSpec::dag(5, 0.4, 9));
    let reach = naive_reachability(&g);
    for u in g.vertices() {
        let mut row = FixedBitSet::with_capacity(g.vertex_count());
        for v in g.vertices() {
            row.set(v.index(), reach[u.index()][v.index()]);
        }
        assert_eq!(&row, &g.reachability()[u.index()]);
    }
}
