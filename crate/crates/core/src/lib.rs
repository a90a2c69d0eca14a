//! Realizability of least-common-ancestor constraints by DAGs.
//!
//! A constraint `(ab, xy)` over a leaf set asks that the least common ancestor
//! of `a` and `b` lie below (or at) that of `x` and `y`. This crate computes
//! the closure `R⁺` of a set of such constraints, decides whether some DAG
//! realizes them, and builds the canonical DAG and canonical network when one
//! does.

pub mod canonical;
pub mod closure;
pub mod cluster;
pub mod dag;
pub mod error;
pub mod extract;
pub mod format;
pub mod incomparability;
pub mod leaves;
pub mod oracle;
pub mod relation;

pub use canonical::{
    algorithm_real, canonical_dag, canonical_dag_from, canonical_network, class_order,
    equivalence_classes, network_from_dag, CanonicalGraphs, ClassId, ClassOrder, ClassPartition,
    Realization,
};
pub use closure::{
    analyze, check_x1, check_x2, classical_closure, is_realizable, is_strictly_realizable,
    plus_closure, plus_closure_scheduled, Analysis, ClosureResult, RealizabilityVerdict,
    RuleCounts, Schedule,
};
pub use cluster::{
    cluster_system, hasse, is_regular, vertex_clusters, Cluster, ClusterSystem, HasseDiagram,
};
pub use dag::{Dag, DagBuilder, VertexId};
pub use error::{Error, Result};
pub use extract::{
    extract_leq, extract_strict, lca_order, verify_realizes, verify_strictly_realizes, LcaFailure,
    LcaOrder, RealizationReport,
};
pub use format::{
    parse_dag, parse_relation, write_dag, write_dot, write_relation, ConstraintFile, ParseError,
};
pub use incomparability::{
    augment, normalize_incomparable, realize_pair, verify_pair, PairCondition, PairReport,
    PairVerdict,
};
pub use leaves::{validate_leaf_name, LeafId, LeafSet, Pair, PairId, ROOT_LABEL};
pub use relation::Relation;
