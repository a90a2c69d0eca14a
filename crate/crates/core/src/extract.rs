//! Relations read off a DAG and checks that a DAG realizes a relation.
//!
//! `⊴_G` holds `(ab, xy)` when both LCAs are defined and `lca(ab) ⪯ lca(xy)`;
//! `◀_G` is the strict variant.

use fixedbitset::FixedBitSet;

use crate::dag::{Dag, VertexId};
use crate::error::{Error, Result};
use crate::leaves::{Pair, PairId};
use crate::relation::Relation;

/// Pairs whose unique LCA is `v`, for every vertex `v`.
fn pairs_by_lca(dag: &Dag) -> Vec<FixedBitSet> {
    let dim = dag.leaf_set().pair_count();
    let mut by_vertex = vec![FixedBitSet::with_capacity(dim); dag.vertex_count()];
    for (pid, lca) in dag.pair_lcas().into_iter().enumerate() {
        if let Some(v) = lca {
            by_vertex[v.index()].insert(pid);
        }
    }
    by_vertex
}

fn extract(dag: &Dag, strict: bool) -> Relation {
    let leaves = dag.leaf_set().clone();
    let dim = leaves.pair_count();
    let lcas = dag.pair_lcas();
    let by_vertex = pairs_by_lca(dag);
    let mut above = vec![FixedBitSet::with_capacity(dim); dag.vertex_count()];
    for v in dag.vertices() {
        let row = &mut above[v.index()];
        for u in dag.ancestors(v).ones() {
            if !(strict && u == v.index()) {
                row.union_with(&by_vertex[u]);
            }
        }
    }
    let rows = lcas
        .iter()
        .map(|lca| match lca {
            Some(v) => above[v.index()].clone(),
            None => FixedBitSet::with_capacity(dim),
        })
        .collect();
    Relation::from_rows(leaves, rows)
}

/// `⊴_G`.
pub fn extract_leq(dag: &Dag) -> Relation {
    extract(dag, false)
}

/// `◀_G`.
pub fn extract_strict(dag: &Dag) -> Relation {
    extract(dag, true)
}

/// Position of `lca(p)` relative to `lca(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcaOrder {
    Equal,
    /// `lca(p) ≺ lca(q)`.
    Below,
    /// `lca(q) ≺ lca(p)`.
    Above,
    Incomparable,
}

/// Compares `lca(p)` with `lca(q)`; `None` if either is undefined.
pub fn lca_order(dag: &Dag, p: Pair, q: Pair) -> Option<LcaOrder> {
    let (u, v) = (dag.lca_unique(p)?, dag.lca_unique(q)?);
    Some(vertex_order(dag, u, v))
}

fn vertex_order(dag: &Dag, u: VertexId, v: VertexId) -> LcaOrder {
    if u == v {
        LcaOrder::Equal
    } else if dag.precedes_eq(u, v) {
        LcaOrder::Below
    } else if dag.precedes_eq(v, u) {
        LcaOrder::Above
    } else {
        LcaOrder::Incomparable
    }
}

/// A fact whose required LCA relation does not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcaFailure {
    pub fact: (Pair, Pair),
    pub observed: LcaOrder,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RealizationReport {
    pub ok: bool,
    /// Pairs of `supp⁺_R` without a unique LCA.
    pub undefined_lcas: Vec<Pair>,
    /// Strict mode: facts of `R` not in `◀_G` whose LCAs are both defined.
    pub i0_failures: Vec<LcaFailure>,
    /// Asymmetric facts of `tc(R)` without strict LCA descent.
    pub i1_failures: Vec<LcaFailure>,
    /// Symmetric facts of `tc(R)` with distinct LCAs.
    pub i2_failures: Vec<LcaFailure>,
}

impl RealizationReport {
    fn finish(mut self) -> Self {
        self.ok = self.undefined_lcas.is_empty()
            && self.i0_failures.is_empty()
            && self.i1_failures.is_empty()
            && self.i2_failures.is_empty();
        self
    }
}

fn require_same_leaves(dag: &Dag, relation: &Relation) -> Result<()> {
    if **dag.leaf_set() == **relation.leaf_set() {
        Ok(())
    } else {
        Err(Error::LeafSetMismatch)
    }
}

fn undefined_in_support(relation: &Relation, lcas: &[Option<VertexId>]) -> Vec<Pair> {
    relation
        .support_plus_mask()
        .ones()
        .filter(|&p| lcas[p].is_none())
        .map(|p| relation.pair_at(PairId(p as u32)))
        .collect()
}

/// Checks that `G` realizes `R`: every pair of `supp⁺_R` has a unique LCA,
/// asymmetric facts of `tc(R)` descend strictly and symmetric ones coincide.
pub fn verify_realizes(dag: &Dag, relation: &Relation) -> Result<RealizationReport> {
    require_same_leaves(dag, relation)?;
    let lcas = dag.pair_lcas();
    let mut report = RealizationReport {
        undefined_lcas: undefined_in_support(relation, &lcas),
        ..Default::default()
    };
    let tc = relation.transitive_closure();
    for (p, q) in tc.iter_ids() {
        let (Some(u), Some(v)) = (lcas[p.index()], lcas[q.index()]) else {
            continue;
        };
        let observed = vertex_order(dag, u, v);
        let fact = (tc.pair_at(p), tc.pair_at(q));
        if tc.contains_id(q, p) {
            if observed != LcaOrder::Equal {
                report.i2_failures.push(LcaFailure { fact, observed });
            }
        } else if observed != LcaOrder::Below {
            report.i1_failures.push(LcaFailure { fact, observed });
        }
    }
    Ok(report.finish())
}

/// Checks that `G` strictly realizes `R`, i.e. `R ⊆ ◀_G`.
pub fn verify_strictly_realizes(dag: &Dag, relation: &Relation) -> Result<RealizationReport> {
    require_same_leaves(dag, relation)?;
    let lcas = dag.pair_lcas();
    let mut report = RealizationReport {
        undefined_lcas: undefined_in_support(relation, &lcas),
        ..Default::default()
    };
    for (p, q) in relation.iter_ids() {
        let (Some(u), Some(v)) = (lcas[p.index()], lcas[q.index()]) else {
            continue;
        };
        let observed = vertex_order(dag, u, v);
        if observed != LcaOrder::Below {
            let fact = (relation.pair_at(p), relation.pair_at(q));
            report.i0_failures.push(LcaFailure { fact, observed });
        }
    }
    Ok(report.finish())
}
