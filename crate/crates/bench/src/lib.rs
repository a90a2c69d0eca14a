//! Workloads shared by the benchmarks.

use lcanet_core::oracle::{
    random_dag, random_relation_with_facts, random_strict_subrelation, RandomSpec,
};
use lcanet_core::Relation;

/// `facts` distinct random constraints over `leaves` leaves; mostly unrealizable.
pub fn dense_workload(leaves: usize, facts: usize, seed: u64) -> Relation {
    random_relation_with_facts(leaves, facts, seed)
}

/// A realizable workload: a random part of the strict relation of a random DAG.
pub fn realizable_workload(leaves: usize, seed: u64) -> Relation {
    let dag = random_dag(&RandomSpec::dag(leaves, 0.15, seed));
    random_strict_subrelation(&dag, 0.05, seed)
}
