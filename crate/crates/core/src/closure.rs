//! The `+`-closure `R⁺` and the realizability conditions X1/X2.
//!
//! `R⁺` is the least relation containing `R` that is reflexive on `supp⁺_R`,
//! transitive and cross-consistent. It is computed as a fixpoint of three rules:
//!
//! * R1 (reflexivity): `p R p` for every `p ∈ supp⁺_R`; applied once up front.
//! * R2 (transitivity): `p R q` and `q R r` give `p R r`.
//! * R3 (cross-consistency): `ac R xy`, `bd R xy` and `ab ∈ supp` give `ab R xy`.
//!
//! The engine is semi-naive: every new fact is queued once and, when popped,
//! joined against the current row of its target and column of its source. For
//! R3 each target column `xy` keeps the set `L(xy)` of leaves occurring in pairs
//! below it; the rule then says every supported pair inside `L(xy)` lies below
//! `xy`, so a fact only matters for R3 when it grows `L(xy)`.

use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::leaves::{LeafId, Pair, PairId};
use crate::relation::Relation;

/// Number of facts each rule contributed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RuleCounts {
    pub reflexivity: usize,
    pub transitivity: usize,
    pub cross_consistency: usize,
}

/// Order in which queued facts are processed. The fixpoint does not depend on it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Schedule {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Debug, Clone)]
pub struct ClosureResult {
    closure: Relation,
    support_plus: FixedBitSet,
    rule_applications: RuleCounts,
}

impl ClosureResult {
    /// The relation `R⁺`.
    pub fn closure(&self) -> &Relation {
        &self.closure
    }

    pub fn into_closure(self) -> Relation {
        self.closure
    }

    pub fn support_plus(&self) -> BTreeSet<Pair> {
        self.support_plus
            .ones()
            .map(|i| self.closure.pair_at(PairId(i as u32)))
            .collect()
    }

    /// `supp⁺_R` as a bitset over pair ids.
    pub fn support_plus_mask(&self) -> &FixedBitSet {
        &self.support_plus
    }

    pub fn rule_applications(&self) -> RuleCounts {
        self.rule_applications
    }
}

struct Engine<'a> {
    relation: &'a Relation,
    rows: Vec<FixedBitSet>,
    cols: Vec<FixedBitSet>,
    below_leaves: Vec<FixedBitSet>,
    support: FixedBitSet,
    queue: VecDeque<(usize, usize)>,
    counts: RuleCounts,
}

impl<'a> Engine<'a> {
    fn new(relation: &'a Relation) -> Self {
        let n = relation.dim();
        let leaves = relation.leaf_set().len();
        let mut engine = Engine {
            relation,
            rows: vec![FixedBitSet::with_capacity(n); n],
            cols: vec![FixedBitSet::with_capacity(n); n],
            below_leaves: vec![FixedBitSet::with_capacity(leaves); n],
            support: relation.support_plus_mask(),
            queue: VecDeque::new(),
            counts: RuleCounts::default(),
        };
        for (p, q) in relation.iter_ids() {
            engine.add(p.index(), q.index());
        }
        for p in engine.support.clone().ones() {
            if engine.add(p, p) {
                engine.counts.reflexivity += 1;
            }
        }
        engine
    }

    fn add(&mut self, p: usize, q: usize) -> bool {
        if self.rows[p].put(q) {
            return false;
        }
        self.cols[q].insert(p);
        self.queue.push_back((p, q));
        true
    }

    fn run(mut self, schedule: Schedule) -> ClosureResult {
        let leaf_set = self.relation.leaf_set().clone();
        let mut scratch = Vec::new();
        loop {
            let next = match schedule {
                Schedule::Fifo => self.queue.pop_front(),
                Schedule::Lifo => self.queue.pop_back(),
            };
            let Some((p, q)) = next else { break };

            // R2, forward: q S r gives p S r.
            scratch.clear();
            scratch.extend(self.rows[q].difference(&self.rows[p]));
            for &r in &scratch {
                if self.add(p, r) {
                    self.counts.transitivity += 1;
                }
            }
            // R2, backward: o S p gives o S q.
            scratch.clear();
            scratch.extend(self.cols[p].difference(&self.cols[q]));
            for &o in &scratch {
                if self.add(o, q) {
                    self.counts.transitivity += 1;
                }
            }
            // R3 on the column of q.
            let pair = leaf_set.pair_at(PairId(p as u32));
            for leaf in [pair.lo(), pair.hi()] {
                if self.below_leaves[q].put(leaf.index()) {
                    continue;
                }
                scratch.clear();
                scratch.extend(self.below_leaves[q].ones().filter_map(|other| {
                    let candidate = leaf_set.pair_id(Pair::new(leaf, LeafId(other as u32)));
                    self.support
                        .contains(candidate.index())
                        .then_some(candidate.index())
                }));
                for &candidate in &scratch {
                    if self.add(candidate, q) {
                        self.counts.cross_consistency += 1;
                    }
                }
            }
        }
        let closure = Relation::from_rows(leaf_set, self.rows);
        assert_eq!(
            closure.support_mask(),
            self.support,
            "closure rules enlarged the support"
        );
        ClosureResult {
            closure,
            support_plus: self.support,
            rule_applications: self.counts,
        }
    }
}

/// Computes `R⁺` by the rule system R1–R3.
pub fn plus_closure(relation: &Relation) -> ClosureResult {
    plus_closure_scheduled(relation, Schedule::Fifo)
}

pub fn plus_closure_scheduled(relation: &Relation, schedule: Schedule) -> ClosureResult {
    Engine::new(relation).run(schedule)
}

/// Condition X1: all `(ab, xx) ∈ R⁺` with `ab ≠ xx`, in pair-id order.
pub fn check_x1(closure: &ClosureResult) -> Vec<(Pair, Pair)> {
    let r = closure.closure();
    let leaves = r.leaf_set();
    let singletons: FixedBitSet = {
        let mut m = FixedBitSet::with_capacity(r.dim());
        for x in leaves.leaves() {
            m.insert(leaves.singleton_id(x).index());
        }
        m
    };
    r.iter_ids()
        .filter(|&(p, q)| p != q && singletons.contains(q.index()))
        .map(|(p, q)| (r.pair_at(p), r.pair_at(q)))
        .collect()
}

/// Condition X2: all `(ab, xy) ∈ tc(R)` with `(xy, ab) ∉ tc(R)` but `(xy, ab) ∈ R⁺`.
///
/// Each entry is the transitive fact `(ab, xy)`; the closure holds its reverse.
pub fn check_x2(relation: &Relation, closure: &ClosureResult) -> Result<Vec<(Pair, Pair)>> {
    relation.require_same_leaves(closure.closure())?;
    Ok(x2_with_tc(
        &relation.transitive_closure(),
        closure.closure(),
    ))
}

fn x2_with_tc(tc: &Relation, plus: &Relation) -> Vec<(Pair, Pair)> {
    tc.iter_ids()
        .filter(|&(p, q)| !tc.contains_id(q, p) && plus.contains_id(q, p))
        .map(|(p, q)| (tc.pair_at(p), tc.pair_at(q)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityVerdict {
    pub realizable: bool,
    pub x1_violations: Vec<(Pair, Pair)>,
    /// Facts `(ab, xy)` of `tc(R)` whose reverse `(xy, ab)` is forced by `R⁺`.
    pub x2_violations: Vec<(Pair, Pair)>,
    pub strict: bool,
    /// A pair related both ways by `tc(R)`, when `tc(R)` is not asymmetric.
    pub asymmetry_witness: Option<(Pair, Pair)>,
}

/// Closure and verdict computed together.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub closure: ClosureResult,
    pub verdict: RealizabilityVerdict,
}

pub fn analyze(relation: &Relation) -> Analysis {
    let closure = plus_closure(relation);
    let tc = relation.transitive_closure();
    let x1_violations = check_x1(&closure);
    let x2_violations = x2_with_tc(&tc, closure.closure());
    let realizable = x1_violations.is_empty() && x2_violations.is_empty();
    let asymmetry_witness = tc.asymmetry_witness();
    let verdict = RealizabilityVerdict {
        realizable,
        strict: realizable && asymmetry_witness.is_none(),
        x1_violations,
        x2_violations,
        asymmetry_witness,
    };
    Analysis { closure, verdict }
}

/// Realizable iff X1 and X2 hold. The verdict also carries the strict answer.
pub fn is_realizable(relation: &Relation) -> RealizabilityVerdict {
    analyze(relation).verdict
}

/// Strictly realizable iff realizable and `tc(R)` is asymmetric.
pub fn is_strictly_realizable(relation: &Relation) -> RealizabilityVerdict {
    analyze(relation).verdict
}

/// The classical closure: the facts that hold in every DAG realizing `R`, which
/// coincide with `R⁺`. Defined only for realizable relations.
pub fn classical_closure(relation: &Relation) -> Result<Relation> {
    let Analysis { closure, verdict } = analyze(relation);
    if !verdict.realizable {
        return Err(Error::NotRealizable);
    }
    Ok(closure.into_closure())
}
