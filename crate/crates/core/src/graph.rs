//! Simple undirected graphs with optional bipartition labels, the witness
//! set types shared by every reduction, validity predicates, and seeded
//! generators.
//!
//! Vertices are dense ids `0..n-1`. All provenance lives in side tables
//! kept by the reduction modules; ids never encode meaning. Graphs are
//! immutable once built, so they can be read concurrently without locking;
//! all mutation happens in [`GraphBuilder`] before publication.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{self, Words};
use crate::error::Error;

/// One of the two sides of a bipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    S1,
    S2,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::S1 => Side::S2,
            Side::S2 => Side::S1,
        }
    }
}

/// Immutable simple undirected graph.
///
/// Invariants: no self-loops, no duplicate edges, endpoints `< n`; when
/// side labels are present every edge joins an `S1` vertex to an `S2`
/// vertex.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Words>,
    sides: Option<Vec<Side>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.sides == other.sides
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edges.len())
            .field("sided", &self.sides.is_some())
            .finish()
    }
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edge list, sorted lexicographically with `u < v` in every pair.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v
            && (u as usize) < self.n
            && (v as usize) < self.n
            && bits::test(&self.adj[u as usize], v as usize)
    }

    pub fn degree(&self, v: u32) -> usize {
        bits::count(&self.adj[v as usize])
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        bits::iter(&self.adj[v as usize]).map(|i| i as u32)
    }

    pub(crate) fn adj_row(&self, v: u32) -> &[u64] {
        &self.adj[v as usize]
    }

    pub fn sides(&self) -> Option<&[Side]> {
        self.sides.as_deref()
    }

    pub fn side(&self, v: u32) -> Option<Side> {
        self.sides.as_ref().map(|s| s[v as usize])
    }

    /// Checks the side-label invariant by a full edge scan, returning the
    /// first monochromatic edge.
    pub fn monochromatic_edge(&self) -> Option<(u32, u32)> {
        let sides = self.sides.as_ref()?;
        self.edges
            .iter()
            .copied()
            .find(|&(u, v)| sides[u as usize] == sides[v as usize])
    }

    /// Two-colors the graph, or returns `None` if it contains an odd cycle.
    ///
    /// Deterministic: BFS from the lowest-id vertex of each component with
    /// the root labeled `S1`, so the labels do not depend on how the graph
    /// was assembled.
    pub fn bipartition(&self) -> Option<Vec<Side>> {
        let mut labels: Vec<Option<Side>> = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..self.n {
            if labels[root].is_some() {
                continue;
            }
            labels[root] = Some(Side::S1);
            queue.push_back(root as u32);
            while let Some(u) = queue.pop_front() {
                let lu = labels[u as usize].unwrap();
                for w in self.neighbors(u) {
                    match labels[w as usize] {
                        None => {
                            labels[w as usize] = Some(lu.other());
                            queue.push_back(w);
                        }
                        Some(lw) if lw == lu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(labels.into_iter().map(|l| l.unwrap()).collect())
    }

    /// True iff every pair of vertices in `s` is joined by an edge.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        if s.iter().any(|v| v as usize >= self.n) {
            return false;
        }
        let vs = s.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff no pair of vertices in `s` is joined by an edge.
    pub fn is_independent_set(&self, s: &VertexSet) -> bool {
        if s.iter().any(|v| v as usize >= self.n) {
            return false;
        }
        let vs = s.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `m` is an induced matching: its edges exist in the graph,
    /// are pairwise vertex-disjoint, and no graph edge joins endpoints of
    /// two distinct edges of `m`. Direct definition check, quadratic in
    /// `|m|`.
    pub fn is_induced_matching(&self, m: &EdgeSet) -> bool {
        let es = m.as_slice();
        for &(u, v) in es {
            if !self.has_edge(u, v) {
                return false;
            }
        }
        for (i, &(a, b)) in es.iter().enumerate() {
            for &(c, d) in &es[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    return false;
                }
                if self.has_edge(a, c)
                    || self.has_edge(a, d)
                    || self.has_edge(b, c)
                    || self.has_edge(b, d)
                {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `c` visits every vertex exactly once and every consecutive
    /// pair, including last back to first, is an edge.
    pub fn validate_cycle(&self, c: &CycleWitness) -> bool {
        let seq = c.as_slice();
        if seq.len() != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &v in seq {
            if v as usize >= self.n || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        for i in 0..seq.len() {
            let u = seq[i];
            let v = seq[(i + 1) % seq.len()];
            if !self.has_edge(u, v) {
                return false;
            }
        }
        true
    }
}

/// Mutable graph under construction.
pub struct GraphBuilder {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
    sides: Option<Vec<Side>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: BTreeSet::new(),
            sides: None,
        }
    }

    /// Adds an undirected edge; idempotent. Panics on self-loops or
    /// out-of-range endpoints, which are construction bugs.
    pub fn add_edge(&mut self, u: u32, v: u32) -> &mut Self {
        assert!(u != v, "self-loop at vertex {u}");
        assert!(
            (u as usize) < self.n && (v as usize) < self.n,
            "edge ({u},{v}) out of range for n={}",
            self.n
        );
        self.edges.insert((u.min(v), u.max(v)));
        self
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn set_sides(&mut self, sides: Vec<Side>) -> &mut Self {
        assert_eq!(sides.len(), self.n, "one side label per vertex");
        self.sides = Some(sides);
        self
    }

    /// Finalizes the graph. Panics if side labels are present and some
    /// edge is monochromatic; callers with untrusted input must check
    /// before building.
    pub fn build(self) -> Graph {
        let edges: Vec<(u32, u32)> = self.edges.into_iter().collect();
        let mut adj = vec![bits::zeroed(self.n); self.n];
        for &(u, v) in &edges {
            bits::set(&mut adj[u as usize], v as usize);
            bits::set(&mut adj[v as usize], u as usize);
        }
        let g = Graph {
            n: self.n,
            edges,
            adj,
            sides: self.sides,
        };
        if let Some((u, v)) = g.monochromatic_edge() {
            panic!("edge ({u},{v}) joins two vertices on the same side");
        }
        g
    }
}

/// Explicit sorted, deduplicated vertex id collection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    pub fn new(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Explicit sorted edge collection; every pair is stored with the smaller
/// endpoint first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<(u32, u32)>);

impl EdgeSet {
    pub fn new(pairs: Vec<(u32, u32)>) -> Self {
        let mut pairs: Vec<(u32, u32)> = pairs
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        EdgeSet(pairs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: u32, v: u32) -> bool {
        self.0.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[(u32, u32)] {
        &self.0
    }

    /// All endpoints, sorted and deduplicated.
    pub fn endpoints(&self) -> VertexSet {
        self.0.iter().flat_map(|&(u, v)| [u, v]).collect()
    }
}

impl FromIterator<(u32, u32)> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = (u32, u32)>>(iter: I) -> Self {
        EdgeSet::new(iter.into_iter().collect())
    }
}

/// Vertex sequence claimed to be a Hamiltonian cycle; checked by
/// [`Graph::validate_cycle`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWitness(Vec<u32>);

impl CycleWitness {
    pub fn new(seq: Vec<u32>) -> Self {
        CycleWitness(seq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

/// A solution witness in the one wire format every tool speaks:
/// `{"kind": "clique|mis|mim|cycle", "items": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "items", rename_all = "lowercase")]
pub enum Witness {
    Clique(VertexSet),
    Mis(VertexSet),
    Mim(EdgeSet),
    Cycle(CycleWitness),
}

/// Complete graph on `n` vertices.
pub fn gen_complete(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            b.add_edge(u, v);
        }
    }
    b.build()
}

/// Complete bipartite graph with sides `0..a` (labeled `S1`) and
/// `a..a+b` (labeled `S2`).
pub fn gen_complete_bipartite(a: usize, b: usize) -> Graph {
    let mut builder = GraphBuilder::new(a + b);
    for u in 0..a as u32 {
        for v in 0..b as u32 {
            builder.add_edge(u, a as u32 + v);
        }
    }
    let mut sides = vec![Side::S1; a];
    sides.extend(std::iter::repeat(Side::S2).take(b));
    builder.set_sides(sides);
    builder.build()
}

/// Erdős–Rényi style random graph.
///
/// Reproducible by construction: a ChaCha8 stream seeded with `seed`
/// drives one Bernoulli(`edge_probability`) draw per vertex pair, pairs
/// scanned in lexicographic order. The same seed yields the same graph
/// on every platform and run.
pub fn gen_random(n: usize, edge_probability: f64, seed: u64) -> Graph {
    assert!(
        (0.0..=1.0).contains(&edge_probability),
        "edge probability must be in [0,1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(edge_probability) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// Random bipartite graph with `p` vertices per side, sides labeled.
/// Same PRNG contract as [`gen_random`].
pub fn gen_random_bipartite(p: usize, edge_probability: f64, seed: u64) -> Graph {
    assert!(
        (0.0..=1.0).contains(&edge_probability),
        "edge probability must be in [0,1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(2 * p);
    for u in 0..p as u32 {
        for v in 0..p as u32 {
            if rng.gen_bool(edge_probability) {
                b.add_edge(u, p as u32 + v);
            }
        }
    }
    let mut sides = vec![Side::S1; p];
    sides.extend(std::iter::repeat(Side::S2).take(p));
    b.set_sides(sides);
    b.build()
}

/// Path on `n` vertices, `0-1-...-(n-1)`.
pub fn gen_path(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 1..n as u32 {
        b.add_edge(u - 1, u);
    }
    b.build()
}

/// Cycle on `n >= 3` vertices.
pub fn gen_cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut b = GraphBuilder::new(n);
    for u in 0..n as u32 {
        b.add_edge(u, (u + 1) % n as u32);
    }
    b.build()
}

pub(crate) fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_from(n: usize, edges: &[(u32, u32)]) -> Graph {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v);
        }
        b.build()
    }

    #[test]
    fn bipartition_triangle_absent() {
        assert!(gen_complete(3).bipartition().is_none());
    }

    #[test]
    fn bipartition_single_edge_forced() {
        let g = graph_from(2, &[(0, 1)]);
        assert_eq!(g.bipartition(), Some(vec![Side::S1, Side::S2]));
    }

    #[test]
    fn bipartition_four_cycle_forced() {
        let g = gen_cycle(4);
        assert_eq!(
            g.bipartition(),
            Some(vec![Side::S1, Side::S2, Side::S1, Side::S2])
        );
    }

    #[test]
    fn induced_matching_path4_adjacent_pair() {
        // a-b-c-d: {ab, cd} is a matching but bc joins the two edges.
        let g = gen_path(4);
        assert!(!g.is_induced_matching(&EdgeSet::new(vec![(0, 1), (2, 3)])));
    }

    #[test]
    fn induced_matching_path5_end_edges() {
        let g = gen_path(5);
        assert!(g.is_induced_matching(&EdgeSet::new(vec![(0, 1), (3, 4)])));
    }

    #[test]
    fn induced_matching_empty_set() {
        let g = gen_complete(4);
        assert!(g.is_induced_matching(&EdgeSet::new(vec![])));
    }

    #[test]
    fn induced_matching_edge_not_in_graph() {
        let g = gen_path(3);
        assert!(!g.is_induced_matching(&EdgeSet::new(vec![(0, 2)])));
    }

    #[test]
    fn clique_and_independent_set() {
        let k3 = gen_complete(3);
        let all = VertexSet::new(vec![0, 1, 2]);
        assert!(k3.is_clique(&all));
        assert!(!k3.is_independent_set(&all));
        let empty = VertexSet::new(vec![]);
        assert!(k3.is_clique(&empty));
        assert!(k3.is_independent_set(&empty));
    }

    #[test]
    fn cycle_validation() {
        let c4 = gen_cycle(4);
        assert!(c4.validate_cycle(&CycleWitness::new(vec![0, 1, 2, 3])));
        assert!(!c4.validate_cycle(&CycleWitness::new(vec![0, 2, 1, 3])));
        let k5 = gen_complete(5);
        assert!(k5.validate_cycle(&CycleWitness::new(vec![3, 0, 4, 1, 2])));
        // wrong length and repeated vertices are rejected
        assert!(!k5.validate_cycle(&CycleWitness::new(vec![0, 1, 2, 3])));
        assert!(!k5.validate_cycle(&CycleWitness::new(vec![0, 1, 2, 3, 3])));
    }

    #[test]
    fn generator_sizes() {
        assert_eq!(gen_complete(5).m(), 10);
        let kb = gen_complete_bipartite(3, 3);
        assert_eq!(kb.m(), 9);
        assert!(kb.bipartition().is_some());
        assert!(kb.monochromatic_edge().is_none());
        assert_eq!(gen_random(10, 0.0, 7).m(), 0);
        assert_eq!(gen_random(10, 1.0, 7).m(), 45);
    }

    #[test]
    fn random_graph_is_seed_deterministic() {
        let a = gen_random(12, 0.4, 99);
        let b = gen_random(12, 0.4, 99);
        assert_eq!(a, b);
        let c = gen_random(12, 0.4, 100);
        assert_ne!(a, c);
    }

    #[test]
    fn edge_endpoints_in_range() {
        let g = gen_random(9, 0.5, 3);
        for &(u, v) in g.edges() {
            assert!(u < v && (v as usize) < g.n());
        }
    }

    #[test]
    fn witness_json_shapes() {
        let w = Witness::Mim(EdgeSet::new(vec![(2, 1), (4, 3)]));
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"kind":"mim","items":[[1,2],[3,4]]}"#);
        let back: Witness = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        let c = Witness::Cycle(CycleWitness::new(vec![0, 1, 2]));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"kind":"cycle","items":[0,1,2]}"#
        );
    }

    #[test]
    #[should_panic(expected = "self-loop")]
    fn builder_rejects_self_loop() {
        GraphBuilder::new(3).add_edge(1, 1);
    }

    #[test]
    #[should_panic(expected = "same side")]
    fn builder_rejects_monochromatic_edge() {
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1);
        b.set_sides(vec![Side::S1, Side::S1]);
        b.build();
    }
}
