//! Equivalence classes of `R⁺`, the canonical DAG `G_R` and the canonical network `N_R`.
//!
//! Classes of mutually related pairs become vertices. `[q] → [p]` is an arc of
//! `G_R` whenever `[p] < [q]`, shortcuts included; the class `[aa]` is the leaf `a`.
//! `N_R` is the shortcut-free reduction of `G_R`, with a fresh root [`ROOT_LABEL`]
//! added above the roots when there is more than one.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::closure::{analyze, check_x1, ClosureResult, RealizabilityVerdict};
use crate::dag::{Dag, VertexId};
use crate::error::{Error, Result};
use crate::leaves::{LeafSet, Pair, PairId, ROOT_LABEL};
use crate::relation::Relation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub u32);

impl ClassId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Partition of `supp⁺_R` into the classes of `~_{R⁺}`.
///
/// Class ids follow the order of the representatives, which are the least
/// members in pair-id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    leaves: Arc<LeafSet>,
    class_of: Vec<Option<ClassId>>,
    members: Vec<Vec<Pair>>,
}

impl ClassPartition {
    pub fn leaf_set(&self) -> &Arc<LeafSet> {
        &self.leaves
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn classes(&self) -> impl Iterator<Item = ClassId> {
        (0..self.members.len() as u32).map(ClassId)
    }

    /// `None` for pairs outside the support.
    pub fn class_of(&self, p: Pair) -> Option<ClassId> {
        self.class_of[self.leaves.pair_id(p).index()]
    }

    /// Members in pair-id order.
    pub fn members(&self, c: ClassId) -> &[Pair] {
        &self.members[c.index()]
    }

    pub fn representative(&self, c: ClassId) -> Pair {
        self.members[c.index()][0]
    }

    /// `a` for the class of a singleton `aa`, `{a,b}` from the representative otherwise.
    pub fn label(&self, c: ClassId) -> String {
        let rep = self.representative(c);
        if rep.is_singleton() {
            self.leaves.name(rep.lo()).to_string()
        } else {
            format!(
                "{{{},{}}}",
                self.leaves.name(rep.lo()),
                self.leaves.name(rep.hi())
            )
        }
    }

    /// Vertex label of the class containing `p`.
    pub fn label_of(&self, p: Pair) -> Option<String> {
        self.class_of(p).map(|c| self.label(c))
    }

    /// All members written `a b`, separated by `, `.
    pub fn members_text(&self, c: ClassId) -> String {
        self.members(c)
            .iter()
            .map(|&p| self.leaves.display_pair(p).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn equivalence_classes(closure: &ClosureResult) -> ClassPartition {
    let r = closure.closure();
    let leaves = r.leaf_set().clone();
    let mut class_of = vec![None; r.dim()];
    let mut members = Vec::new();
    for p in closure.support_plus_mask().ones() {
        if class_of[p].is_some() {
            continue;
        }
        let id = ClassId(members.len() as u32);
        let pid = PairId(p as u32);
        let mut class = Vec::new();
        for q in r.row(pid).ones() {
            if r.contains_id(PairId(q as u32), pid) {
                class_of[q] = Some(id);
                class.push(r.pair_at(PairId(q as u32)));
            }
        }
        members.push(class);
    }
    ClassPartition {
        leaves,
        class_of,
        members,
    }
}

/// `[p] ≤ [q] ⟺ p R⁺ q` as a matrix over class ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassOrder {
    leq: Vec<FixedBitSet>,
}

impl ClassOrder {
    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, c: ClassId, d: ClassId) -> bool {
        self.leq[c.index()].contains(d.index())
    }

    pub fn less(&self, c: ClassId, d: ClassId) -> bool {
        c != d && self.leq(c, d)
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.leq.len();
        (0..n).all(|c| self.leq[c].contains(c))
            && (0..n).all(|c| {
                self.leq[c]
                    .ones()
                    .all(|d| d == c || !self.leq[d].contains(c))
            })
            && (0..n).all(|c| {
                self.leq[c]
                    .ones()
                    .all(|d| self.leq[d].is_subset(&self.leq[c]))
            })
    }
}

pub fn class_order(partition: &ClassPartition, closure: &ClosureResult) -> ClassOrder {
    class_order_with(partition, closure, |c| partition.representative(c))
}

/// Builds the order from arbitrary class members; the result does not depend on the choice.
pub fn class_order_with(
    partition: &ClassPartition,
    closure: &ClosureResult,
    mut pick: impl FnMut(ClassId) -> Pair,
) -> ClassOrder {
    let r = closure.closure();
    let n = partition.len();
    let reps: Vec<PairId> = partition.classes().map(|c| r.pair_id(pick(c))).collect();
    let leq = reps
        .iter()
        .map(|&p| {
            let mut row = FixedBitSet::with_capacity(n);
            for (d, &q) in reps.iter().enumerate() {
                if r.contains_id(p, q) {
                    row.insert(d);
                }
            }
            row
        })
        .collect();
    ClassOrder { leq }
}

/// Builds `G_R` from an already computed closure. Requires X1.
pub fn canonical_dag_from(closure: &ClosureResult) -> Result<(Dag, ClassPartition)> {
    if !check_x1(closure).is_empty() {
        return Err(Error::X1Violated);
    }
    let partition = equivalence_classes(closure);
    let order = class_order(&partition, closure);
    let leaves = partition.leaf_set().clone();

    // Leaves first, then the other classes by representative.
    let mut vertex_of = vec![VertexId(0); partition.len()];
    let mut labels = Vec::with_capacity(partition.len());
    for leaf in leaves.leaves() {
        let c = partition
            .class_of(Pair::singleton(leaf))
            .expect("singletons lie in supp⁺");
        vertex_of[c.index()] = VertexId(labels.len() as u32);
        labels.push(leaves.name(leaf).to_string());
    }
    for c in partition.classes() {
        if !partition.representative(c).is_singleton() {
            vertex_of[c.index()] = VertexId(labels.len() as u32);
            labels.push(partition.label(c));
        }
    }
    let mut arcs = Vec::new();
    for q in partition.classes() {
        for p in partition.classes() {
            if order.less(p, q) {
                arcs.push((vertex_of[q.index()].index(), vertex_of[p.index()].index()));
            }
        }
    }
    arcs.sort_unstable();
    let dag = Dag::new(leaves, labels, &arcs)?;
    Ok((dag, partition))
}

/// `G_R`.
pub fn canonical_dag(relation: &Relation) -> Result<Dag> {
    let analysis = analyze(relation);
    canonical_dag_from(&analysis.closure).map(|(dag, _)| dag)
}

/// `N_R` from `G_R`: remove shortcuts, then add [`ROOT_LABEL`] if several roots remain.
pub fn network_from_dag(dag: &Dag) -> Dag {
    let reduced = dag.transitive_reduction();
    if reduced.roots().len() > 1 {
        reduced
            .with_new_root(ROOT_LABEL)
            .expect("`_root` is reserved and cannot clash with other labels")
    } else {
        reduced
    }
}

/// `N_R`. Defined only for realizable relations.
pub fn canonical_network(relation: &Relation) -> Result<Dag> {
    let analysis = analyze(relation);
    if !analysis.verdict.realizable {
        return Err(Error::NotRealizable);
    }
    let (dag, _) = canonical_dag_from(&analysis.closure)?;
    Ok(network_from_dag(&dag))
}

/// Outcome of the realizability algorithm.
#[derive(Debug, Clone)]
pub struct Realization {
    pub closure: ClosureResult,
    pub verdict: RealizabilityVerdict,
    /// Present when `R` is realizable.
    pub graphs: Option<CanonicalGraphs>,
}

#[derive(Debug, Clone)]
pub struct CanonicalGraphs {
    pub partition: ClassPartition,
    /// `G_R`.
    pub dag: Dag,
    /// `G_R⁻`.
    pub reduced: Dag,
    /// `N_R`.
    pub network: Dag,
}

/// Computes `supp⁺` and `R⁺`, tests X1 and X2 and, on success, builds `G_R`, `G_R⁻` and `N_R`.
pub fn algorithm_real(relation: &Relation) -> Realization {
    let analysis = analyze(relation);
    let graphs = analysis.verdict.realizable.then(|| {
        let (dag, partition) =
            canonical_dag_from(&analysis.closure).expect("X1 holds for realizable relations");
        let reduced = dag.transitive_reduction();
        let network = network_from_dag(&dag);
        CanonicalGraphs {
            partition,
            dag,
            reduced,
            network,
        }
    });
    Realization {
        closure: analysis.closure,
        verdict: analysis.verdict,
        graphs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::plus_closure;
    use crate::cluster::is_regular;
    use crate::extract::verify_realizes;

    fn rel(names: &[&str], facts: &[(&str, &str, &str, &str)]) -> Relation {
        let x = Arc::new(LeafSet::new(names.iter().copied()).unwrap());
        Relation::from_names(x, facts).unwrap()
    }

    fn working_example() -> Relation {
        rel(
            &["x", "y", "z"],
            &[("x", "y", "x", "z"), ("x", "x", "y", "z")],
        )
    }

    fn merged_example() -> Relation {
        rel(
            &["a", "b", "c", "x", "y", "z"],
            &[
                ("x", "y", "x", "z"),
                ("x", "z", "y", "z"),
                ("y", "z", "x", "y"),
                ("a", "b", "b", "c"),
            ],
        )
    }

    #[test]
    fn empty_relation_gives_isolated_leaves() {
        let r = rel(&["a", "b", "c"], &[]);
        let closure = plus_closure(&r);
        let part = equivalence_classes(&closure);
        assert_eq!(part.len(), 3);
        assert!(part.classes().all(|c| part.members(c).len() == 1));
        let g = canonical_dag(&r).unwrap();
        assert_eq!((g.vertex_count(), g.arc_count()), (3, 0));
        let n = canonical_network(&r).unwrap();
        assert_eq!(n.vertex_count(), 4);
        assert_eq!(n.roots(), vec![n.vertex(ROOT_LABEL).unwrap()]);
        assert_eq!(n.children(n.roots()[0]).len(), 3);
    }

    #[test]
    fn working_example_network_is_the_reduction() {
        let r = working_example();
        let g = canonical_dag(&r).unwrap();
        assert_eq!(
            g.labels(),
            ["x", "y", "z", "{x,y}", "{x,z}"]
                .map(String::from)
                .as_slice()
        );
        assert!(verify_realizes(&g, &r).unwrap().ok);
        let reduced = g.transitive_reduction();
        assert!(verify_realizes(&reduced, &r).unwrap().ok);
        let n = canonical_network(&r).unwrap();
        assert!(n.same_labeled_graph(&reduced));
        assert_eq!(n.roots(), vec![n.vertex("{x,z}").unwrap()]);
        assert!(g.is_phylogenetic() && g.is_two_lca_relevant());
        assert!(is_regular(&n));
    }

    #[test]
    fn merged_classes_and_new_root() {
        let r = merged_example();
        let closure = plus_closure(&r);
        let part = equivalence_classes(&closure);
        let x = part.leaf_set().clone();
        let xy = part.class_of(x.pair("x", "y").unwrap()).unwrap();
        assert_eq!(part.class_of(x.pair("x", "z").unwrap()), Some(xy));
        assert_eq!(part.class_of(x.pair("y", "z").unwrap()), Some(xy));
        assert_eq!(part.members_text(xy), "x y, x z, y z");
        let ab = part.class_of(x.pair("a", "b").unwrap()).unwrap();
        let bc = part.class_of(x.pair("b", "c").unwrap()).unwrap();
        assert_ne!(ab, bc);
        let order = class_order(&part, &closure);
        assert!(order.less(ab, bc));
        assert!(order.is_partial_order());

        let out = algorithm_real(&r);
        let graphs = out.graphs.unwrap();
        assert!(!graphs.network.same_labeled_graph(&graphs.reduced));
        assert!(graphs.network.vertex(ROOT_LABEL).is_some());
        assert_eq!(graphs.reduced.roots().len(), 2);
        assert!(verify_realizes(&graphs.network, &r).unwrap().ok);
    }

    #[test]
    fn not_minimal_example_order() {
        let r = rel(
            &["a", "b", "c"],
            &[
                ("a", "a", "a", "c"),
                ("b", "b", "a", "c"),
                ("a", "a", "a", "b"),
            ],
        );
        let closure = plus_closure(&r);
        let part = equivalence_classes(&closure);
        let x = part.leaf_set().clone();
        let ab = part.class_of(x.pair("a", "b").unwrap()).unwrap();
        let ac = part.class_of(x.pair("a", "c").unwrap()).unwrap();
        let order = class_order(&part, &closure);
        assert!(order.leq(ab, ac));
        assert!(!order.leq(ac, ab));
    }

    #[test]
    fn canonical_dag_of_closure_is_the_same() {
        for r in [working_example(), merged_example()] {
            let plus = plus_closure(&r).into_closure();
            assert!(canonical_dag(&r)
                .unwrap()
                .same_labeled_graph(&canonical_dag(&plus).unwrap()));
        }
    }

    #[test]
    fn failures() {
        let x1 = rel(&["a", "b", "x"], &[("a", "b", "x", "x")]);
        assert_eq!(canonical_dag(&x1).unwrap_err(), Error::X1Violated);
        assert_eq!(canonical_network(&x1).unwrap_err(), Error::NotRealizable);
        let out = algorithm_real(&x1);
        assert!(!out.verdict.realizable && out.graphs.is_none());
        assert!(!out.verdict.x1_violations.is_empty());

        let x2 = rel(
            &["a", "b", "x", "y"],
            &[
                ("x", "x", "a", "b"),
                ("y", "y", "a", "b"),
                ("a", "b", "x", "y"),
            ],
        );
        let out = algorithm_real(&x2);
        assert!(!out.verdict.realizable);
        let l = x2.leaf_set();
        assert!(out
            .verdict
            .x2_violations
            .contains(&(l.pair("a", "b").unwrap(), l.pair("x", "y").unwrap())));
        assert_eq!(canonical_network(&x2).unwrap_err(), Error::NotRealizable);
        assert!(canonical_dag(&x2).is_ok());
    }
}
