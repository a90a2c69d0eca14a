//! Order constraints `R` together with incomparability constraints `S`.
//!
//! An entry `(p, q)` of `S` asks for `lca(p)` and `lca(q)` to exist and be
//! incomparable. Pairs mentioned only by `S` are tied to their leaves in the
//! augmented relation `R_S`; the pair `(R, S)` is realizable exactly when `R_S`
//! is realizable and no entry of `S` is ordered by `R_S⁺`.

use crate::canonical::{canonical_dag_from, network_from_dag};
use crate::closure::{analyze, RealizabilityVerdict};
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::extract::{lca_order, verify_realizes, LcaOrder, RealizationReport};
use crate::leaves::Pair;
use crate::relation::Relation;

/// Rejects `(p, p)` entries and returns `S` with every entry in both directions.
pub fn normalize_incomparable(s: &Relation) -> Result<Relation> {
    if let Some((p, _)) = s.iter().find(|(p, q)| p == q) {
        return Err(Error::SelfIncomparability(
            s.leaf_set().display_pair(p).to_string(),
        ));
    }
    s.union(&s.converse())
}

/// `R_S`: `R` plus `(aa, ab)` and `(bb, ab)` for every `ab ∈ supp_S \ supp⁺_R` with `a ≠ b`.
pub fn augment(r: &Relation, s: &Relation) -> Result<Relation> {
    r.require_same_leaves(s)?;
    let known = r.support_plus_mask();
    let mut out = r.clone();
    for p in s.support() {
        if p.is_singleton() || known.contains(r.pair_id(p).index()) {
            continue;
        }
        out.insert(Pair::singleton(p.lo()), p);
        out.insert(Pair::singleton(p.hi()), p);
    }
    Ok(out)
}

/// Which condition of the joint test failed first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCondition {
    /// `R_S` is not realizable.
    Augmented,
    /// Some entry of `S` is ordered by `R_S⁺`.
    Comparable,
}

#[derive(Debug, Clone)]
pub struct PairVerdict {
    pub realizable: bool,
    pub failed: Option<PairCondition>,
    pub augmented: Relation,
    pub augmented_verdict: RealizabilityVerdict,
    /// Entries `(p, q)` of `S` (one direction each) with `p R_S⁺ q` or `q R_S⁺ p`.
    pub comparable: Vec<(Pair, Pair)>,
    /// `N_{R_S}` when realizable.
    pub network: Option<Dag>,
    /// Direct check of the returned network against `(R, S)`.
    pub check: Option<PairReport>,
}

/// Realization of `R` plus LCA incomparability of every `S` entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub ok: bool,
    pub realization: RealizationReport,
    /// Entries whose LCAs are undefined (`None`) or comparable.
    pub incomparability_failures: Vec<((Pair, Pair), Option<LcaOrder>)>,
}

/// Checks directly that `G` realizes `R` and separates every entry of `S`.
pub fn verify_pair(dag: &Dag, r: &Relation, s: &Relation) -> Result<PairReport> {
    r.require_same_leaves(s)?;
    let realization = verify_realizes(dag, r)?;
    let incomparability_failures: Vec<_> = one_direction(s)
        .into_iter()
        .filter_map(|(p, q)| {
            let observed = lca_order(dag, p, q);
            (observed != Some(LcaOrder::Incomparable)).then_some(((p, q), observed))
        })
        .collect();
    Ok(PairReport {
        ok: realization.ok && incomparability_failures.is_empty(),
        realization,
        incomparability_failures,
    })
}

/// Entries of `S` with each unordered entry listed once, as `(p, q)` with `p < q`.
fn one_direction(s: &Relation) -> Vec<(Pair, Pair)> {
    let mut out: Vec<(Pair, Pair)> = s
        .iter()
        .map(|(p, q)| if p <= q { (p, q) } else { (q, p) })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Decides whether `(R, S)` is realizable and, if so, returns `N_{R_S}`.
pub fn realize_pair(r: &Relation, s: &Relation) -> Result<PairVerdict> {
    let symmetric = normalize_incomparable(s)?;
    let augmented = augment(r, &symmetric)?;
    let analysis = analyze(&augmented);
    let plus = analysis.closure.closure();
    let comparable: Vec<(Pair, Pair)> = one_direction(&symmetric)
        .into_iter()
        .filter(|&(p, q)| plus.contains(p, q) || plus.contains(q, p))
        .collect();
    let failed = if !analysis.verdict.realizable {
        Some(PairCondition::Augmented)
    } else if !comparable.is_empty() {
        Some(PairCondition::Comparable)
    } else {
        None
    };
    let (network, check) = if failed.is_none() {
        let (dag, _) = canonical_dag_from(&analysis.closure)?;
        let network = network_from_dag(&dag);
        let check = verify_pair(&network, r, &symmetric)?;
        (Some(network), Some(check))
    } else {
        (None, None)
    };
    Ok(PairVerdict {
        realizable: failed.is_none(),
        failed,
        augmented,
        augmented_verdict: analysis.verdict,
        comparable,
        network,
        check,
    })
}
