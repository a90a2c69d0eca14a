//! DAGs on a leaf set: reachability, least common ancestors and shortcut removal.
//!
//! Arcs point from parent to child. The leaves (out-degree 0 vertices) are in
//! bijection with the names of the [`LeafSet`]. We write `v ⪯ u` when `u`
//! reaches `v`; every vertex caches the bitsets of its ancestors and
//! descendants, computed once at construction in topological order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::leaves::{LeafId, LeafSet, Pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone)]
pub struct Dag {
    leaves: Arc<LeafSet>,
    labels: Vec<String>,
    by_label: HashMap<String, VertexId>,
    children: Vec<Vec<VertexId>>,
    parents: Vec<Vec<VertexId>>,
    leaf_vertex: Vec<VertexId>,
    vertex_leaf: Vec<Option<LeafId>>,
    /// `ancestors[v]` holds every `u` with `v ⪯ u`, including `v`.
    ancestors: Vec<FixedBitSet>,
    /// `descendants[v]` holds every `u` with `u ⪯ v`, including `v`.
    descendants: Vec<FixedBitSet>,
}

/// Incremental construction of a [`Dag`] by vertex labels.
#[derive(Debug, Default, Clone)]
pub struct DagBuilder {
    labels: Vec<String>,
    by_label: HashMap<String, usize>,
    arcs: Vec<(usize, usize)>,
}

impl DagBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of the vertex with this label, adding it if needed.
    pub fn vertex(&mut self, label: &str) -> usize {
        if let Some(&v) = self.by_label.get(label) {
            return v;
        }
        let v = self.labels.len();
        self.labels.push(label.to_string());
        self.by_label.insert(label.to_string(), v);
        v
    }

    pub fn arc(&mut self, parent: usize, child: usize) -> &mut Self {
        self.arcs.push((parent, child));
        self
    }

    pub fn arc_by_label(&mut self, parent: &str, child: &str) -> &mut Self {
        let (p, c) = (self.vertex(parent), self.vertex(child));
        self.arc(p, c)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn build(self, leaves: Arc<LeafSet>) -> Result<Dag> {
        Dag::new(leaves, self.labels, &self.arcs)
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidGraph(msg.into()))
}

impl Dag {
    /// Validates and builds a DAG. Vertices labeled by a leaf name are the
    /// leaves; they must be exactly the sinks.
    pub fn new(leaves: Arc<LeafSet>, labels: Vec<String>, arcs: &[(usize, usize)]) -> Result<Dag> {
        let n = labels.len();
        let mut by_label = HashMap::with_capacity(n);
        for (v, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return invalid(format!("invalid vertex label {label:?}"));
            }
            if by_label.insert(label.clone(), VertexId(v as u32)).is_some() {
                return invalid(format!("duplicate vertex label `{label}`"));
            }
        }
        let mut children = vec![Vec::new(); n];
        let mut parents = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(arcs.len());
        for &(u, w) in arcs {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if w >= n {
                return Err(Error::UnknownVertex(w));
            }
            if u == w {
                return invalid(format!("self-arc at `{}`", labels[u]));
            }
            if !seen.insert((u, w)) {
                return invalid(format!("duplicate arc `{}` -> `{}`", labels[u], labels[w]));
            }
            children[u].push(VertexId(w as u32));
            parents[w].push(VertexId(u as u32));
        }
        for list in children.iter_mut().chain(parents.iter_mut()) {
            list.sort_unstable();
        }

        let mut leaf_vertex = Vec::with_capacity(leaves.len());
        let mut vertex_leaf = vec![None; n];
        for leaf in leaves.leaves() {
            let name = leaves.name(leaf);
            let Some(&v) = by_label.get(name) else {
                return invalid(format!("leaf `{name}` has no vertex"));
            };
            if !children[v.index()].is_empty() {
                return invalid(format!("leaf `{name}` has children"));
            }
            leaf_vertex.push(v);
            vertex_leaf[v.index()] = Some(leaf);
        }
        for v in 0..n {
            if children[v].is_empty() && vertex_leaf[v].is_none() {
                return invalid(format!(
                    "sink `{}` is not a leaf of the leaf set",
                    labels[v]
                ));
            }
        }

        let order = topological_order(&children, &parents)
            .ok_or_else(|| Error::InvalidGraph("graph contains a directed cycle".into()))?;
        let mut ancestors = vec![FixedBitSet::with_capacity(n); n];
        for &v in &order {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for p in &parents[v] {
                set.union_with(&ancestors[p.index()]);
            }
            ancestors[v] = set;
        }
        let mut descendants = vec![FixedBitSet::with_capacity(n); n];
        for &v in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for c in &children[v] {
                set.union_with(&descendants[c.index()]);
            }
            descendants[v] = set;
        }

        Ok(Dag {
            leaves,
            labels,
            by_label,
            children,
            parents,
            leaf_vertex,
            vertex_leaf,
            ancestors,
            descendants,
        })
    }

    /// Builds a DAG from labeled arcs; isolated leaves come from the leaf set.
    pub fn from_labeled_arcs(leaves: Arc<LeafSet>, arcs: &[(&str, &str)]) -> Result<Dag> {
        let mut b = DagBuilder::new();
        for name in leaves.names() {
            b.vertex(name);
        }
        for &(u, w) in arcs {
            b.arc_by_label(u, w);
        }
        b.build(leaves)
    }

    pub fn leaf_set(&self) -> &Arc<LeafSet> {
        &self.leaves
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len() as u32).map(VertexId)
    }

    /// Arcs `(parent, child)` ordered by parent, then child.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.children
            .iter()
            .enumerate()
            .flat_map(|(u, cs)| cs.iter().map(move |&c| (VertexId(u as u32), c)))
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.by_label.get(label).copied()
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v.index()]
    }

    pub fn parents(&self, v: VertexId) -> &[VertexId] {
        &self.parents[v.index()]
    }

    pub fn has_arc(&self, u: VertexId, w: VertexId) -> bool {
        self.children[u.index()].binary_search(&w).is_ok()
    }

    pub fn leaf_vertex(&self, leaf: LeafId) -> VertexId {
        self.leaf_vertex[leaf.index()]
    }

    pub fn vertex_leaf(&self, v: VertexId) -> Option<LeafId> {
        self.vertex_leaf[v.index()]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v.index()].is_empty()
    }

    pub fn roots(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|v| self.parents[v.index()].is_empty())
            .collect()
    }

    /// A DAG with a single root.
    pub fn is_network(&self) -> bool {
        self.roots().len() == 1
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.index()))
        }
    }

    /// `true` iff `u` is an ancestor of `v`, i.e. `v ⪯ u` (every vertex is its own ancestor).
    pub fn is_ancestor(&self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.ancestors[v.index()].contains(u.index()))
    }

    /// `v ⪯ u` without bounds checking beyond indexing.
    #[inline]
    pub fn precedes_eq(&self, v: VertexId, u: VertexId) -> bool {
        self.ancestors[v.index()].contains(u.index())
    }

    pub fn ancestors(&self, v: VertexId) -> &FixedBitSet {
        &self.ancestors[v.index()]
    }

    pub fn descendants(&self, v: VertexId) -> &FixedBitSet {
        &self.descendants[v.index()]
    }

    /// Full reachability matrix: row `u` holds every `v` with `v ⪯ u`.
    pub fn reachability(&self) -> &[FixedBitSet] {
        &self.descendants
    }

    /// `LCA(A)`: the ⪯-minimal common ancestors of the leaves in `A`.
    ///
    /// May be empty, or hold more than one vertex.
    pub fn lca_set(&self, leaves: &[LeafId]) -> Result<Vec<VertexId>> {
        let Some((&first, rest)) = leaves.split_first() else {
            return invalid("LCA of an empty leaf set");
        };
        for &leaf in leaves {
            if leaf.index() >= self.leaves.len() {
                return Err(Error::UnknownLeaf(format!("#{}", leaf.0)));
            }
        }
        let mut common = self.ancestors[self.leaf_vertex(first).index()].clone();
        for &leaf in rest {
            common.intersect_with(&self.ancestors[self.leaf_vertex(leaf).index()]);
        }
        Ok(self.minimal_in(&common))
    }

    pub fn lca_set_by_names(&self, names: &[&str]) -> Result<Vec<VertexId>> {
        let ids = names
            .iter()
            .map(|n| self.leaves.id(n))
            .collect::<Result<Vec<_>>>()?;
        self.lca_set(&ids)
    }

    /// Members of `set` with no proper descendant inside `set`.
    fn minimal_in(&self, set: &FixedBitSet) -> Vec<VertexId> {
        set.ones()
            .filter(|&v| self.descendants[v].intersection(set).all(|w| w == v))
            .map(|v| VertexId(v as u32))
            .collect()
    }

    /// `lca(ab)` if `LCA({a, b})` is a single vertex.
    pub fn lca_unique(&self, pair: Pair) -> Option<VertexId> {
        if pair.is_singleton() {
            return Some(self.leaf_vertex(pair.lo()));
        }
        let mut common = self.ancestors[self.leaf_vertex(pair.lo()).index()].clone();
        common.intersect_with(&self.ancestors[self.leaf_vertex(pair.hi()).index()]);
        match self.minimal_in(&common).as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }

    /// `lca` of every pair, indexed by pair id.
    pub fn pair_lcas(&self) -> Vec<Option<VertexId>> {
        self.leaves.pairs().map(|p| self.lca_unique(p)).collect()
    }

    /// Removes every arc `(u, w)` for which another `u ⇝ w` path exists.
    ///
    /// Such a path leaves `u` through a different child `c` with `w ⪯ c`.
    pub fn transitive_reduction(&self) -> Dag {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for (u, w) in self.arcs() {
            let redundant = self
                .children(u)
                .iter()
                .any(|&c| c != w && self.precedes_eq(w, c));
            if !redundant {
                arcs.push((u.index(), w.index()));
            }
        }
        Dag::new(self.leaves.clone(), self.labels.clone(), &arcs)
            .expect("removing arcs keeps the graph a valid DAG on the same leaves")
    }

    pub fn is_shortcut_free(&self) -> bool {
        self.arcs().all(|(u, w)| {
            !self
                .children(u)
                .iter()
                .any(|&c| c != w && self.precedes_eq(w, c))
        })
    }

    /// No vertex has out-degree 1 and in-degree at most 1.
    pub fn is_phylogenetic(&self) -> bool {
        self.vertices()
            .all(|v| !(self.children(v).len() == 1 && self.parents(v).len() <= 1))
    }

    /// Every vertex is `lca(xy)` for some leaves `x`, `y`.
    pub fn is_two_lca_relevant(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.vertex_count());
        for v in self.pair_lcas().into_iter().flatten() {
            hit.insert(v.index());
        }
        hit.count_ones(..) == self.vertex_count()
    }

    /// Adds a vertex `label` above all current roots.
    pub fn with_new_root(&self, label: &str) -> Result<Dag> {
        let mut labels = self.labels.clone();
        let root = labels.len();
        labels.push(label.to_string());
        let mut arcs: Vec<(usize, usize)> =
            self.arcs().map(|(u, w)| (u.index(), w.index())).collect();
        arcs.extend(self.roots().into_iter().map(|r| (root, r.index())));
        Dag::new(self.leaves.clone(), labels, &arcs)
    }

    /// Same leaf set, labels and labeled arcs, regardless of vertex numbering.
    pub fn same_labeled_graph(&self, other: &Dag) -> bool {
        if *self.leaves != *other.leaves || self.vertex_count() != other.vertex_count() {
            return false;
        }
        let mut mine: Vec<(&str, &str)> = self
            .arcs()
            .map(|(u, w)| (self.label(u), self.label(w)))
            .collect();
        let mut theirs: Vec<(&str, &str)> = other
            .arcs()
            .map(|(u, w)| (other.label(u), other.label(w)))
            .collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        let mut a: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        let mut b: Vec<&str> = other.labels.iter().map(String::as_str).collect();
        a.sort_unstable();
        b.sort_unstable();
        mine == theirs && a == b
    }
}

impl fmt::Debug for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dag")
            .field("labels", &self.labels)
            .field(
                "arcs",
                &self
                    .arcs()
                    .map(|(u, w)| format!("{} -> {}", self.label(u), self.label(w)))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Kahn's algorithm; `None` if a cycle exists.
fn topological_order(children: &[Vec<VertexId>], parents: &[Vec<VertexId>]) -> Option<Vec<usize>> {
    let n = children.len();
    let mut indeg: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for c in &children[v] {
            indeg[c.index()] -= 1;
            if indeg[c.index()] == 0 {
                queue.push_back(c.index());
            }
        }
    }
    (order.len() == n).then_some(order)
}
