//! Clusters of a DAG, Hasse diagrams of cluster systems and regularity.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::dag::{Dag, VertexId};
use crate::error::Result;
use crate::leaves::{LeafId, LeafSet};

/// A set of leaves, stored as a bitset over leaf ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cluster(FixedBitSet);

impl Cluster {
    pub fn new(leaf_count: usize) -> Self {
        Cluster(FixedBitSet::with_capacity(leaf_count))
    }

    pub fn from_leaves(leaf_count: usize, leaves: impl IntoIterator<Item = LeafId>) -> Self {
        let mut c = Self::new(leaf_count);
        for leaf in leaves {
            c.0.insert(leaf.index());
        }
        c
    }

    pub fn singleton(leaf_count: usize, leaf: LeafId) -> Self {
        Self::from_leaves(leaf_count, [leaf])
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn contains(&self, leaf: LeafId) -> bool {
        self.0.contains(leaf.index())
    }

    pub fn leaves(&self) -> impl Iterator<Item = LeafId> + '_ {
        self.0.ones().map(|i| LeafId(i as u32))
    }

    pub fn is_subset(&self, other: &Cluster) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_proper_subset(&self, other: &Cluster) -> bool {
        self.0.is_subset(&other.0) && self.0 != other.0
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }

    /// `{a,b,c}` using leaf names.
    pub fn display<'a>(&'a self, leaves: &'a LeafSet) -> impl fmt::Display + 'a {
        ClusterDisplay {
            cluster: self,
            leaves,
        }
    }
}

impl fmt::Debug for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

struct ClusterDisplay<'a> {
    cluster: &'a Cluster,
    leaves: &'a LeafSet,
}

impl fmt::Display for ClusterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, leaf) in self.cluster.leaves().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.leaves.name(leaf))?;
        }
        f.write_str("}")
    }
}

pub type ClusterSystem = BTreeSet<Cluster>;

/// `C_G(v)` for every vertex, indexed by vertex id.
pub fn vertex_clusters(dag: &Dag) -> Vec<Cluster> {
    let n = dag.leaf_set().len();
    dag.vertices()
        .map(|v| {
            Cluster::from_leaves(
                n,
                dag.descendants(v)
                    .ones()
                    .filter_map(|w| dag.vertex_leaf(VertexId(w as u32))),
            )
        })
        .collect()
}

/// The cluster system `𝔠_G` with repeated clusters collapsed.
pub fn cluster_system(dag: &Dag) -> ClusterSystem {
    vertex_clusters(dag).into_iter().collect()
}

/// Hasse diagram of a set system: arcs from each cluster to the clusters it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    /// Clusters in the order of the system (`BTreeSet` order).
    pub clusters: Vec<Cluster>,
    /// `(A, B)` by index: `B ⊊ A` with nothing strictly in between.
    pub arcs: Vec<(usize, usize)>,
}

pub fn hasse(system: &ClusterSystem) -> HasseDiagram {
    let clusters: Vec<Cluster> = system.iter().cloned().collect();
    let mut arcs = Vec::new();
    for (i, a) in clusters.iter().enumerate() {
        let below: Vec<usize> = (0..clusters.len())
            .filter(|&j| clusters[j].is_proper_subset(a))
            .collect();
        for &j in &below {
            let b = &clusters[j];
            let covered = below
                .iter()
                .all(|&k| k == j || !b.is_proper_subset(&clusters[k]));
            if covered {
                arcs.push((i, j));
            }
        }
    }
    HasseDiagram { clusters, arcs }
}

impl HasseDiagram {
    /// The diagram as a DAG on `leaves`. Singleton clusters become the leaves;
    /// every other cluster is labeled `{a,b,...}`. Fails unless the system is
    /// grounded and free of the empty cluster.
    pub fn to_dag(&self, leaves: Arc<LeafSet>) -> Result<Dag> {
        let labels: Vec<String> = self
            .clusters
            .iter()
            .map(|c| match c.len() {
                1 => leaves.name(c.leaves().next().unwrap()).to_string(),
                _ => c.display(&leaves).to_string(),
            })
            .collect();
        Dag::new(leaves, labels, &self.arcs)
    }
}

/// `G` is isomorphic to the Hasse diagram of `𝔠_G` via `v ↦ C_G(v)`.
pub fn is_regular(dag: &Dag) -> bool {
    let clusters = vertex_clusters(dag);
    let mut index = HashMap::with_capacity(clusters.len());
    for (v, c) in clusters.iter().enumerate() {
        if index.insert(c, v).is_some() {
            return false;
        }
    }
    let system: ClusterSystem = clusters.iter().cloned().collect();
    let diagram = hasse(&system);
    if diagram.arcs.len() != dag.arc_count() {
        return false;
    }
    diagram.arcs.iter().all(|&(a, b)| {
        let u = index[&diagram.clusters[a]];
        let w = index[&diagram.clusters[b]];
        dag.has_arc(VertexId(u as u32), VertexId(w as u32))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaves(names: &[&str]) -> Arc<LeafSet> {
        Arc::new(LeafSet::new(names.iter().copied()).unwrap())
    }

    fn cl(x: &LeafSet, names: &[&str]) -> Cluster {
        Cluster::from_leaves(x.len(), names.iter().map(|n| x.id(n).unwrap()))
    }

    #[test]
    fn clusters_of_leaves_and_root() {
        let x = leaves(&["a", "b", "c"]);
        let g =
            Dag::from_labeled_arcs(x.clone(), &[("r", "a"), ("r", "s"), ("s", "b"), ("s", "c")])
                .unwrap();
        let cs = vertex_clusters(&g);
        assert_eq!(cs[g.vertex("a").unwrap().index()], cl(&x, &["a"]));
        assert_eq!(cs[g.vertex("r").unwrap().index()], cl(&x, &["a", "b", "c"]));
        assert_eq!(
            cs[g.vertex("s").unwrap().index()].display(&x).to_string(),
            "{b,c}"
        );
        assert!(is_regular(&g));
    }

    #[test]
    fn hasse_of_two_element_chain() {
        let x = leaves(&["x", "y"]);
        let system: ClusterSystem = [cl(&x, &["x"]), cl(&x, &["x", "y"])].into_iter().collect();
        let h = hasse(&system);
        assert_eq!(h.arcs.len(), 1);
        let (a, b) = h.arcs[0];
        assert_eq!(h.clusters[a], cl(&x, &["x", "y"]));
        assert_eq!(h.clusters[b], cl(&x, &["x"]));
    }

    #[test]
    fn hasse_skips_non_covers() {
        let x = leaves(&["a", "b", "c"]);
        let (a, ab, abc) = (
            cl(&x, &["a"]),
            cl(&x, &["a", "b"]),
            cl(&x, &["a", "b", "c"]),
        );
        let system: ClusterSystem = [a.clone(), ab.clone(), abc.clone()].into_iter().collect();
        let h = hasse(&system);
        let named: BTreeSet<(Cluster, Cluster)> = h
            .arcs
            .iter()
            .map(|&(i, j)| (h.clusters[i].clone(), h.clusters[j].clone()))
            .collect();
        assert_eq!(named, [(abc, ab.clone()), (ab, a)].into_iter().collect());

        let pair: ClusterSystem = [cl(&x, &["a"]), cl(&x, &["b"]), cl(&x, &["a", "b"])]
            .into_iter()
            .collect();
        assert_eq!(hasse(&pair).arcs.len(), 2);
    }

    #[test]
    fn chain_above_a_leaf_is_not_regular() {
        let x = leaves(&["x"]);
        let g = Dag::from_labeled_arcs(x, &[("top", "x")]).unwrap();
        assert!(!is_regular(&g));
    }

    #[test]
    fn star_is_regular_and_hasse_round_trips() {
        let x = leaves(&["a", "b", "c"]);
        let star =
            Dag::from_labeled_arcs(x.clone(), &[("r", "a"), ("r", "b"), ("r", "c")]).unwrap();
        assert!(is_regular(&star));
        let h = hasse(&cluster_system(&star)).to_dag(x).unwrap();
        assert!(is_regular(&h));
        assert_eq!(h.arc_count(), 3);
        assert!(h.vertex("{a,b,c}").is_some());
    }

    #[test]
    fn shortcut_breaks_regularity() {
        let x = leaves(&["a", "b", "c"]);
        let g = Dag::from_labeled_arcs(
            x,
            &[("r", "s"), ("r", "c"), ("r", "a"), ("s", "a"), ("s", "b")],
        )
        .unwrap();
        assert!(!is_regular(&g));
        assert!(is_regular(&g.transitive_reduction()));
    }
}
