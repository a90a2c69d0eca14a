#![allow(dead_code)]

use lcanet_core::oracle::{
    random_dag, random_realized_subrelation, random_relation, random_strict_subrelation, RandomSpec,
};
use lcanet_core::{Dag, Relation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn relation(max_leaves: usize) -> impl Strategy<Value = Relation> {
    (1..=max_leaves, 0.0f64..0.25, any::<u64>())
        .prop_map(|(n, density, seed)| random_relation(&RandomSpec::relation(n, density, seed)))
}

pub fn dag(max_leaves: usize) -> impl Strategy<Value = Dag> {
    (1..=max_leaves, 0.1f64..0.6, any::<u64>())
        .prop_map(|(n, density, seed)| random_dag(&RandomSpec::dag(n, density, seed)))
}

/// A DAG with a random part of its strict relation.
pub fn strict_part(max_leaves: usize) -> impl Strategy<Value = (Dag, Relation)> {
    (dag(max_leaves), 0.0f64..0.6, any::<u64>()).prop_map(|(g, density, seed)| {
        let r = random_strict_subrelation(&g, density, seed);
        (g, r)
    })
}

/// Realizable relations, mostly with a non-trivial class structure.
pub fn realizable(max_leaves: usize) -> impl Strategy<Value = Relation> {
    (dag(max_leaves), 0.0f64..0.6, any::<u64>(), any::<bool>()).prop_map(
        |(g, density, seed, strict)| {
            if strict {
                random_strict_subrelation(&g, density, seed)
            } else {
                random_realized_subrelation(&g, density, seed)
            }
        },
    )
}

/// Random sub-relation keeping each fact with probability one half.
pub fn sub_relation(r: &Relation, seed: u64) -> Relation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Relation::from_facts(
        r.leaf_set().clone(),
        r.iter()
            .filter(|_| rng.random_bool(0.5))
            .collect::<Vec<_>>(),
    )
}
