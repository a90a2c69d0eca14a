//! Binary relations on the pair set of a leaf set.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::leaves::{LeafId, LeafSet, Pair, PairId};

/// A relation `R` on pairs, stored as a dense boolean matrix indexed by
/// `PairId x PairId`. Row `p` holds every `q` with `p R q`.
#[derive(Clone)]
pub struct Relation {
    leaves: Arc<LeafSet>,
    rows: Vec<FixedBitSet>,
    len: usize,
}

impl Relation {
    pub fn empty(leaves: Arc<LeafSet>) -> Self {
        let n = leaves.pair_count();
        Relation {
            rows: vec![FixedBitSet::with_capacity(n); n],
            leaves,
            len: 0,
        }
    }

    /// Every ordered pair of pairs.
    pub fn full(leaves: Arc<LeafSet>) -> Self {
        let n = leaves.pair_count();
        let mut row = FixedBitSet::with_capacity(n);
        row.insert_range(..);
        Relation {
            rows: vec![row; n],
            leaves,
            len: n * n,
        }
    }

    /// Wraps precomputed rows; `rows.len()` must equal the pair count.
    pub(crate) fn from_rows(leaves: Arc<LeafSet>, rows: Vec<FixedBitSet>) -> Self {
        debug_assert_eq!(rows.len(), leaves.pair_count());
        let len = rows.iter().map(|r| r.count_ones(..)).sum();
        Relation { leaves, rows, len }
    }

    pub fn from_facts<I>(leaves: Arc<LeafSet>, facts: I) -> Self
    where
        I: IntoIterator<Item = (Pair, Pair)>,
    {
        let mut r = Relation::empty(leaves);
        for (p, q) in facts {
            r.insert(p, q);
        }
        r
    }

    /// Convenience constructor from leaf-name quadruples `(a, b, x, y)` meaning `ab R xy`.
    pub fn from_names(leaves: Arc<LeafSet>, facts: &[(&str, &str, &str, &str)]) -> Result<Self> {
        let mut r = Relation::empty(leaves);
        for &(a, b, x, y) in facts {
            let p = r.leaves.pair(a, b)?;
            let q = r.leaves.pair(x, y)?;
            r.insert(p, q);
        }
        Ok(r)
    }

    pub fn leaf_set(&self) -> &Arc<LeafSet> {
        &self.leaves
    }

    /// Number of pairs, i.e. the matrix dimension.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn same_leaves(&self, other: &Relation) -> bool {
        Arc::ptr_eq(&self.leaves, &other.leaves) || *self.leaves == *other.leaves
    }

    pub(crate) fn require_same_leaves(&self, other: &Relation) -> Result<()> {
        if self.same_leaves(other) {
            Ok(())
        } else {
            Err(Error::LeafSetMismatch)
        }
    }

    pub fn pair_id(&self, p: Pair) -> PairId {
        self.leaves.pair_id(p)
    }

    pub fn pair_at(&self, id: PairId) -> Pair {
        self.leaves.pair_at(id)
    }

    #[inline]
    pub fn contains_id(&self, p: PairId, q: PairId) -> bool {
        self.rows[p.index()].contains(q.index())
    }

    pub fn contains(&self, p: Pair, q: Pair) -> bool {
        self.contains_id(self.pair_id(p), self.pair_id(q))
    }

    /// Inserts `p R q`; returns `true` if the fact is new.
    #[inline]
    pub fn insert_id(&mut self, p: PairId, q: PairId) -> bool {
        let new = !self.rows[p.index()].put(q.index());
        self.len += new as usize;
        new
    }

    pub fn insert(&mut self, p: Pair, q: Pair) -> bool {
        let (p, q) = (self.pair_id(p), self.pair_id(q));
        self.insert_id(p, q)
    }

    /// The set `{q | p R q}` as a bitset over pair ids.
    pub fn row(&self, p: PairId) -> &FixedBitSet {
        &self.rows[p.index()]
    }

    /// Facts in `(pair-id, pair-id)` order.
    pub fn iter_ids(&self) -> impl Iterator<Item = (PairId, PairId)> + '_ {
        self.rows.iter().enumerate().flat_map(|(p, row)| {
            row.ones()
                .map(move |q| (PairId(p as u32), PairId(q as u32)))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pair, Pair)> + '_ {
        self.iter_ids()
            .map(|(p, q)| (self.pair_at(p), self.pair_at(q)))
    }

    /// Pair ids occurring on either side of some fact.
    pub fn support_mask(&self) -> FixedBitSet {
        let n = self.dim();
        let mut mask = FixedBitSet::with_capacity(n);
        for (p, row) in self.rows.iter().enumerate() {
            if !row.is_clear() {
                mask.insert(p);
                mask.union_with(row);
            }
        }
        mask
    }

    /// Support together with all singleton pairs `xx`.
    pub fn support_plus_mask(&self) -> FixedBitSet {
        let mut mask = self.support_mask();
        for x in self.leaves.leaves() {
            mask.insert(self.leaves.singleton_id(x).index());
        }
        mask
    }

    /// `supp_R`: every pair occurring in some fact.
    pub fn support(&self) -> BTreeSet<Pair> {
        self.mask_to_pairs(&self.support_mask())
    }

    /// `supp_R` plus every singleton pair `xx`.
    pub fn support_plus(&self) -> BTreeSet<Pair> {
        self.mask_to_pairs(&self.support_plus_mask())
    }

    fn mask_to_pairs(&self, mask: &FixedBitSet) -> BTreeSet<Pair> {
        mask.ones()
            .map(|i| self.pair_at(PairId(i as u32)))
            .collect()
    }

    /// Transitive closure by breadth-first search from every source pair.
    pub fn transitive_closure(&self) -> Relation {
        let n = self.dim();
        let mut out = Relation::empty(self.leaves.clone());
        let mut queue = VecDeque::new();
        for src in 0..n {
            if self.rows[src].is_clear() {
                continue;
            }
            let mut seen = FixedBitSet::with_capacity(n);
            queue.extend(self.rows[src].ones());
            for q in self.rows[src].ones() {
                seen.insert(q);
            }
            while let Some(q) = queue.pop_front() {
                for r in self.rows[q].ones() {
                    if !seen.put(r) {
                        queue.push_back(r);
                    }
                }
            }
            out.len += seen.count_ones(..);
            out.rows[src] = seen;
        }
        out
    }

    /// Some `(p, q)` with both `p R q` and `q R p`, if any. Prefers `p ≠ q`.
    pub fn asymmetry_witness(&self) -> Option<(Pair, Pair)> {
        let symmetric = || self.iter_ids().filter(|&(p, q)| self.contains_id(q, p));
        symmetric()
            .find(|(p, q)| p != q)
            .or_else(|| symmetric().next())
            .map(|(p, q)| (self.pair_at(p), self.pair_at(q)))
    }

    pub fn is_asymmetric(&self) -> bool {
        self.asymmetry_witness().is_none()
    }

    /// Leaves `a` with some `ac R target`.
    pub(crate) fn column_leaves(&self, target: PairId) -> FixedBitSet {
        let mut leaves = FixedBitSet::with_capacity(self.leaves.len());
        for (p, row) in self.rows.iter().enumerate() {
            if row.contains(target.index()) {
                let pair = self.pair_at(PairId(p as u32));
                leaves.insert(pair.lo().index());
                leaves.insert(pair.hi().index());
            }
        }
        leaves
    }

    /// Whether `ac R xy`, `bd R xy` and `ab ∈ supp_R` always imply `ab R xy`.
    ///
    /// For each target `xy`, the leaves occurring in pairs below `xy` must
    /// have every supported pair among them below `xy` too.
    pub fn is_cross_consistent(&self) -> bool {
        let support = self.support_mask();
        for target in support.ones() {
            let target = PairId(target as u32);
            let below = self.column_leaves(target);
            for p in support.ones() {
                let pair = self.pair_at(PairId(p as u32));
                if below.contains(pair.lo().index())
                    && below.contains(pair.hi().index())
                    && !self.rows[p].contains(target.index())
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.require_same_leaves(other)?;
        Ok(self
            .rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset(b)))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.require_same_leaves(other)?;
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
        out.len = out.rows.iter().map(|r| r.count_ones(..)).sum();
        Ok(out)
    }

    /// `{(q, p) | p R q}`.
    pub fn converse(&self) -> Relation {
        let mut out = Relation::empty(self.leaves.clone());
        for (p, q) in self.iter_ids() {
            out.insert_id(q, p);
        }
        out
    }

    /// Restriction to facts whose both sides lie in `mask`.
    pub fn restrict(&self, mask: &FixedBitSet) -> Relation {
        let mut out = Relation::empty(self.leaves.clone());
        for p in mask.ones() {
            let mut row = self.rows[p].clone();
            row.intersect_with(mask);
            out.len += row.count_ones(..);
            out.rows[p] = row;
        }
        out
    }

    /// Re-indexes this relation over a leaf superset.
    pub fn widen(&self, leaves: Arc<LeafSet>) -> Result<Relation> {
        let map: Vec<LeafId> = self
            .leaves
            .names()
            .iter()
            .map(|name| leaves.id(name))
            .collect::<Result<_>>()?;
        let lift = |p: Pair| Pair::new(map[p.lo().index()], map[p.hi().index()]);
        Ok(Relation::from_facts(
            leaves.clone(),
            self.iter().map(|(p, q)| (lift(p), lift(q))),
        ))
    }

    pub fn display_pair(&self, p: Pair) -> impl fmt::Display + '_ {
        self.leaves.display_pair(p)
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.same_leaves(other) && self.len == other.len && self.rows == other.rows
    }
}

impl Eq for Relation {}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut set = f.debug_set();
        for (p, q) in self.iter() {
            set.entry(&format_args!(
                "({},{})",
                self.leaves.display_pair(p).to_string().replace(' ', ""),
                self.leaves.display_pair(q).to_string().replace(' ', "")
            ));
        }
        set.finish()
    }
}
