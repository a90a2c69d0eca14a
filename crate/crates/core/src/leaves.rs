//! Leaf sets and unordered leaf pairs.
//!
//! Leaves are identified by dense ids `0..n` assigned in lexicographic order of
//! their names. A [`Pair`] is an unordered 1- or 2-element subset `{a, b}` of the
//! leaf set; the singleton `{a}` is written `aa`. Pairs are enumerated densely by
//! [`PairId`] in lexicographic order of `(lo, hi)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Label of the vertex added above the roots of a multi-rooted reduced DAG.
pub const ROOT_LABEL: &str = "_root";

/// Dense leaf identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafId(pub u32);

impl LeafId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense identifier of an element of the pair set over a [`LeafSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairId(pub u32);

impl PairId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An unordered pair of leaves with `lo <= hi`; `lo == hi` encodes a singleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    lo: LeafId,
    hi: LeafId,
}

impl Pair {
    pub fn new(a: LeafId, b: LeafId) -> Self {
        if a <= b {
            Pair { lo: a, hi: b }
        } else {
            Pair { lo: b, hi: a }
        }
    }

    pub fn singleton(a: LeafId) -> Self {
        Pair { lo: a, hi: a }
    }

    pub fn lo(self) -> LeafId {
        self.lo
    }

    pub fn hi(self) -> LeafId {
        self.hi
    }

    pub fn is_singleton(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, leaf: LeafId) -> bool {
        self.lo == leaf || self.hi == leaf
    }
}

/// The ground set of leaf labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeafSet {
    names: Vec<String>,
}

/// Checks a single leaf name against the naming rules.
///
/// Names are non-empty, contain no whitespace and none of `<`, `#`, `:`, `{`,
/// `}`, `"`, and do not start with `_` (reserved for generated vertices such as
/// [`ROOT_LABEL`]).
pub fn validate_leaf_name(name: &str) -> Result<()> {
    let bad = |reason| {
        Err(Error::InvalidLeafName {
            name: name.to_string(),
            reason,
        })
    };
    if name.is_empty() {
        return bad("empty name");
    }
    if name == ROOT_LABEL {
        return bad("`_root` is reserved");
    }
    if name.starts_with('_') {
        return bad("names starting with `_` are reserved");
    }
    if name.chars().any(char::is_whitespace) {
        return bad("contains whitespace");
    }
    if let Some(c) = name
        .chars()
        .find(|c| matches!(c, '<' | '#' | ':' | '{' | '}' | '"'))
    {
        return Err(Error::InvalidLeafName {
            name: name.to_string(),
            reason: match c {
                '<' => "contains `<`",
                '#' => "contains `#`",
                ':' => "contains `:`",
                '"' => "contains `\"`",
                _ => "contains a brace",
            },
        });
    }
    if name == "->" {
        return bad("`->` is the arc token");
    }
    Ok(())
}

impl LeafSet {
    /// Builds a leaf set from distinct names; ids follow lexicographic order.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen = BTreeSet::new();
        for name in names {
            let name = name.into();
            validate_leaf_name(&name)?;
            if seen.contains(&name) {
                return Err(Error::DuplicateLeaf(name));
            }
            seen.insert(name);
        }
        Self::from_sorted(seen)
    }

    /// Like [`LeafSet::new`] but collapses repeated names.
    pub fn from_names_dedup<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = BTreeSet::new();
        for name in names {
            let name = name.into();
            validate_leaf_name(&name)?;
            set.insert(name);
        }
        Self::from_sorted(set)
    }

    fn from_sorted(names: BTreeSet<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyLeafSet);
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidGraph("too many leaves".into()));
        }
        Ok(LeafSet {
            names: names.into_iter().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: a leaf set has at least one leaf.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, leaf: LeafId) -> &str {
        &self.names[leaf.index()]
    }

    pub fn id(&self, name: &str) -> Result<LeafId> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map(|i| LeafId(i as u32))
            .map_err(|_| Error::UnknownLeaf(name.to_string()))
    }

    pub fn leaves(&self) -> impl Iterator<Item = LeafId> + '_ {
        (0..self.names.len() as u32).map(LeafId)
    }

    /// Number of elements of the pair set, `n(n+1)/2`.
    pub fn pair_count(&self) -> usize {
        let n = self.len();
        n * (n + 1) / 2
    }

    pub fn pair(&self, a: &str, b: &str) -> Result<Pair> {
        Ok(Pair::new(self.id(a)?, self.id(b)?))
    }

    /// Dense id of a pair: rows `lo = 0, 1, ...` each listing `hi = lo..n`.
    pub fn pair_id(&self, pair: Pair) -> PairId {
        let n = self.len();
        let lo = pair.lo.index();
        let hi = pair.hi.index();
        debug_assert!(lo <= hi && hi < n);
        PairId((row_start(n, lo) + (hi - lo)) as u32)
    }

    pub fn pair_at(&self, id: PairId) -> Pair {
        let n = self.len();
        let mut idx = id.index();
        let mut lo = 0;
        while idx >= n - lo {
            idx -= n - lo;
            lo += 1;
        }
        Pair::new(LeafId(lo as u32), LeafId((lo + idx) as u32))
    }

    /// All pairs in pair-id order.
    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        let n = self.len() as u32;
        (0..n).flat_map(move |lo| (lo..n).map(move |hi| Pair::new(LeafId(lo), LeafId(hi))))
    }

    pub fn singleton_id(&self, leaf: LeafId) -> PairId {
        self.pair_id(Pair::singleton(leaf))
    }

    pub fn display_pair(&self, pair: Pair) -> PairDisplay<'_> {
        PairDisplay { leaves: self, pair }
    }
}

/// Number of pairs in rows `0..lo`, i.e. `sum_{i<lo} (n - i)`.
fn row_start(n: usize, lo: usize) -> usize {
    lo * n - lo * lo.saturating_sub(1) / 2
}

/// Renders a pair as `a b` using leaf names.
pub struct PairDisplay<'a> {
    leaves: &'a LeafSet,
    pair: Pair,
}

impl fmt::Display for PairDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            self.leaves.name(self.pair.lo),
            self.leaves.name(self.pair.hi)
        )
    }
}
