//! Brute-force reference implementations and seeded random generators.
//!
//! The oracles here favour obviousness over speed and share no code with the
//! engines they check beyond the [`Relation`] and [`Dag`] containers.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::canonical_network;
use crate::dag::{Dag, DagBuilder};
use crate::error::Result;
use crate::leaves::{LeafId, LeafSet, Pair, PairId};
use crate::relation::Relation;

/// Name of the generator behind every [`RandomSpec`].
pub const PRNG_ALGORITHM: &str = "chacha8";

/// `R⁺` by literal rule scanning: R1 once, then full passes of R2 over all
/// triples and R3 over all six-tuples of leaves until nothing changes.
pub fn naive_plus_closure(relation: &Relation) -> Relation {
    let leaves = relation.leaf_set().clone();
    let pairs: Vec<Pair> = leaves.pairs().collect();
    let ids: Vec<LeafId> = leaves.leaves().collect();
    let mut s = relation.clone();
    for p in relation.support_plus() {
        s.insert(p, p);
    }
    loop {
        let mut changed = false;
        for &p in &pairs {
            for &q in &pairs {
                for &r in &pairs {
                    if s.contains(p, q) && s.contains(q, r) && !s.contains(p, r) {
                        s.insert(p, r);
                        changed = true;
                    }
                }
            }
        }
        let support = s.support();
        for &a in &ids {
            for &b in &ids {
                for &c in &ids {
                    for &d in &ids {
                        for &x in &ids {
                            for &y in &ids {
                                let (ab, xy) = (Pair::new(a, b), Pair::new(x, y));
                                if s.contains(Pair::new(a, c), xy)
                                    && s.contains(Pair::new(b, d), xy)
                                    && support.contains(&ab)
                                    && !s.contains(ab, xy)
                                {
                                    s.insert(ab, xy);
                                    changed = true;
                                }
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            return s;
        }
    }
}

/// `tc(R)` by breadth-first search from every pair.
pub fn naive_transitive_closure(relation: &Relation) -> Relation {
    let leaves = relation.leaf_set().clone();
    let pairs: Vec<Pair> = leaves.pairs().collect();
    let mut out = Relation::empty(leaves);
    for &start in &pairs {
        let mut seen = vec![false; pairs.len()];
        let mut stack: Vec<Pair> = pairs
            .iter()
            .copied()
            .filter(|&q| relation.contains(start, q))
            .collect();
        while let Some(q) = stack.pop() {
            let i = out.pair_id(q).index();
            if seen[i] {
                continue;
            }
            seen[i] = true;
            out.insert(start, q);
            stack.extend(pairs.iter().copied().filter(|&r| relation.contains(q, r)));
        }
    }
    out
}

/// Cross-consistency by scanning all `(a, b, c, d, x, y)`.
pub fn naive_is_cross_consistent(relation: &Relation) -> bool {
    let leaves = relation.leaf_set();
    let ids: Vec<LeafId> = leaves.leaves().collect();
    let support = relation.support();
    for &a in &ids {
        for &b in &ids {
            for &c in &ids {
                for &d in &ids {
                    for &x in &ids {
                        for &y in &ids {
                            let (ab, xy) = (Pair::new(a, b), Pair::new(x, y));
                            if relation.contains(Pair::new(a, c), xy)
                                && relation.contains(Pair::new(b, d), xy)
                                && support.contains(&ab)
                                && !relation.contains(ab, xy)
                            {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Reachability by depth-first search: `result[u][v]` iff `v ⪯ u`.
pub fn naive_reachability(dag: &Dag) -> Vec<Vec<bool>> {
    let n = dag.vertex_count();
    dag.vertices()
        .map(|u| {
            let mut seen = vec![false; n];
            let mut stack = vec![u];
            while let Some(v) = stack.pop() {
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    stack.extend_from_slice(dag.children(v));
                }
            }
            seen
        })
        .collect()
}

/// A DAG with `⊴_G = R⁺`: `N_R` plus, for every pair `ab` outside `supp⁺_{R⁺}`,
/// two vertices below the root that both have `a` and `b` as children, so that
/// `lca(ab)` is undefined.
pub fn build_tight_witness(relation: &Relation) -> Result<Dag> {
    let network = canonical_network(relation)?;
    let plus = naive_plus_closure(relation);
    let support = plus.support_plus_mask();
    let leaves = relation.leaf_set().clone();
    let root = network.roots()[0];

    let mut b = DagBuilder::new();
    for v in network.vertices() {
        b.vertex(network.label(v));
    }
    for (u, w) in network.arcs() {
        b.arc(u.index(), w.index());
    }
    let root = root.index();
    for (pid, p) in leaves.pairs().enumerate() {
        if p.is_singleton() || support.contains(pid) {
            continue;
        }
        let (a, bn) = (leaves.name(p.lo()), leaves.name(p.hi()));
        for prefix in ["_v", "_u"] {
            let g = b.vertex(&format!("{prefix}_{a}_{bn}"));
            b.arc(root, g);
            b.arc_by_label(&format!("{prefix}_{a}_{bn}"), a);
            b.arc_by_label(&format!("{prefix}_{a}_{bn}"), bn);
        }
    }
    b.build(leaves)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Relation,
    Dag,
}

/// Parameters of a random instance. Equal specs give equal instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub leaf_count: usize,
    /// Inclusion probability of each fact (relations) or arc (DAGs).
    pub density: f64,
    pub seed: u64,
    pub mode: Mode,
}

#[derive(Debug, Clone)]
pub enum Instance {
    Relation(Relation),
    Dag(Dag),
}

impl RandomSpec {
    pub fn relation(leaf_count: usize, density: f64, seed: u64) -> Self {
        RandomSpec {
            leaf_count,
            density,
            seed,
            mode: Mode::Relation,
        }
    }

    pub fn dag(leaf_count: usize, density: f64, seed: u64) -> Self {
        RandomSpec {
            leaf_count,
            density,
            seed,
            mode: Mode::Dag,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// An independent spec for stream `index`, derived with SplitMix64.
    pub fn split(&self, index: u64) -> Self {
        let mut z = self.seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        RandomSpec {
            seed: z ^ (z >> 31),
            ..*self
        }
    }

    pub fn generate(&self) -> Instance {
        match self.mode {
            Mode::Relation => Instance::Relation(random_relation(self)),
            Mode::Dag => Instance::Dag(random_dag(self)),
        }
    }
}

/// Leaf names `a`, `b`, ... (`l000`, `l001`, ... beyond 26 leaves).
pub fn leaf_names(count: usize) -> Vec<String> {
    assert!(count >= 1, "a leaf set needs at least one leaf");
    if count <= 26 {
        (b'a'..)
            .take(count)
            .map(|c| (c as char).to_string())
            .collect()
    } else {
        (0..count).map(|i| format!("l{i:03}")).collect()
    }
}

pub fn leaf_set(count: usize) -> Arc<LeafSet> {
    Arc::new(LeafSet::new(leaf_names(count)).expect("generated names are valid"))
}

/// Every ordered pair of pairs is included independently with probability `density`.
pub fn random_relation(spec: &RandomSpec) -> Relation {
    let leaves = leaf_set(spec.leaf_count);
    let mut rng = spec.rng();
    let dim = leaves.pair_count() as u32;
    let mut r = Relation::empty(leaves);
    for p in 0..dim {
        for q in 0..dim {
            if rng.random_bool(spec.density) {
                r.insert_id(PairId(p), PairId(q));
            }
        }
    }
    r
}

/// Exactly `facts` distinct facts drawn uniformly over `leaf_count` leaves.
pub fn random_relation_with_facts(leaf_count: usize, facts: usize, seed: u64) -> Relation {
    let leaves = leaf_set(leaf_count);
    let dim = leaves.pair_count() as u32;
    assert!(
        facts <= (dim as usize).pow(2),
        "more facts than ordered pairs of pairs"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Relation::empty(leaves);
    while r.len() < facts {
        r.insert_id(
            PairId(rng.random_range(0..dim)),
            PairId(rng.random_range(0..dim)),
        );
    }
    r
}

/// A random DAG on `leaf_count` leaves with up to `leaf_count + 2` inner vertices.
///
/// Inner vertices are placed in a random order; each arc from an inner vertex
/// to a later inner vertex or to a leaf is present with probability `density`.
/// Inner vertices left without children get one random leaf child.
pub fn random_dag(spec: &RandomSpec) -> Dag {
    let leaves = leaf_set(spec.leaf_count);
    let mut rng = spec.rng();
    let inner = rng.random_range(0..=spec.leaf_count + 2);
    let mut b = DagBuilder::new();
    for name in leaves.names() {
        b.vertex(name);
    }
    let n_leaves = leaves.len();
    let mut order: Vec<usize> = (0..inner).map(|i| b.vertex(&format!("v{i}"))).collect();
    order.shuffle(&mut rng);
    for (i, &u) in order.iter().enumerate() {
        let mut has_child = false;
        for &w in &order[i + 1..] {
            if rng.random_bool(spec.density) {
                b.arc(u, w);
                has_child = true;
            }
        }
        for leaf in 0..n_leaves {
            if rng.random_bool(spec.density) {
                b.arc(u, leaf);
                has_child = true;
            }
        }
        if !has_child {
            b.arc(u, rng.random_range(0..n_leaves));
        }
    }
    b.build(leaves).expect("arcs follow a topological order")
}

/// A random subset of `◀_G`, which `G` strictly realizes.
pub fn random_strict_subrelation(dag: &Dag, density: f64, seed: u64) -> Relation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strict = crate::extract::extract_strict(dag);
    Relation::from_facts(
        dag.leaf_set().clone(),
        strict
            .iter()
            .filter(|_| rng.random_bool(density))
            .collect::<Vec<_>>(),
    )
}

/// A random part of `⊴_G` that `G` realizes.
///
/// Facts between pairs with the same LCA are kept in both directions, so
/// every fact of the transitive closure that lacks its converse is strict in `G`.
pub fn random_realized_subrelation(dag: &Dag, density: f64, seed: u64) -> Relation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let leq = crate::extract::extract_leq(dag);
    let mut r = Relation::empty(dag.leaf_set().clone());
    for (p, q) in leq.iter() {
        if rng.random_bool(density) {
            r.insert(p, q);
            if leq.contains(q, p) {
                r.insert(q, p);
            }
        }
    }
    r
}
