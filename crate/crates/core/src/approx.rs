//! Optimum-preserving constructions used by the inapproximability
//! arguments, with the witness mappings that carry solutions back to the
//! source instance:
//!
//! - [`image_reduce`]: pendant image vertices turn independent sets into
//!   induced matchings of the same size.
//! - [`ham_closure_reduce`]: a clique of fresh vertices joined to every
//!   source vertex makes any graph Hamiltonian without changing its
//!   maximum induced matching.
//! - [`blowup_reduce`]: each source vertex becomes two `n^3`-vertex
//!   groups, one per side, scaling the maximum induced matching by `n^3`
//!   up to an additive `n(n-1)`.
//! - [`hambip_closure_reduce`]: the bipartite analogue of the closure,
//!   adding `p+1` vertices per side of an equally sided bipartite graph.

use crate::error::Error;
use crate::graph::{CycleWitness, EdgeSet, Graph, GraphBuilder, Side, VertexSet};

/// Output of [`image_reduce`]: source ids are unchanged, the image of
/// vertex `u` is `image_map[u]`.
#[derive(Clone, Debug)]
pub struct ImageReductionOutput {
    pub source: Graph,
    pub graph: Graph,
    pub image_map: Vec<u32>,
}

/// Adds a degree-1 image vertex pendant to every source vertex.
pub fn image_reduce(g: &Graph) -> ImageReductionOutput {
    let n = g.n() as u32;
    let mut b = GraphBuilder::new(2 * g.n());
    for &(u, v) in g.edges() {
        b.add_edge(u, v);
    }
    for u in 0..n {
        b.add_edge(u, n + u);
    }
    ImageReductionOutput {
        source: g.clone(),
        graph: b.build(),
        image_map: (n..2 * n).collect(),
    }
}

/// Maps an induced matching of the image graph to an independent set of
/// the source of exactly the same size: a pendant edge contributes its
/// source endpoint, an original edge its lower endpoint.
pub fn matching_to_mis(out: &ImageReductionOutput, m: &EdgeSet) -> Result<VertexSet, Error> {
    if !out.graph.is_induced_matching(m) {
        return Err(Error::precondition(
            "witness is not an induced matching in the image graph",
        ));
    }
    let n = out.source.n() as u32;
    let set: VertexSet = m
        .iter()
        .map(|(u, v)| if v >= n { u } else { u.min(v) })
        .collect();
    debug_assert_eq!(set.len(), m.len());
    debug_assert!(out.source.is_independent_set(&set));
    Ok(set)
}

/// Output of [`ham_closure_reduce`]: the `p` added clique vertices carry
/// ids `p..2p`, and `ham_cycle` alternates added and source vertices.
#[derive(Clone, Debug)]
pub struct HamClosureOutput {
    pub source: Graph,
    pub graph: Graph,
    pub added: Vec<u32>,
    pub ham_cycle: CycleWitness,
}

/// Joins a clique of `p` fresh vertices to all `p` source vertices,
/// yielding a Hamiltonian graph with the same maximum induced matching.
/// Needs at least two source vertices for the cycle to exist.
pub fn ham_closure_reduce(g: &Graph) -> Result<HamClosureOutput, Error> {
    let p = g.n() as u32;
    if p < 2 {
        return Err(Error::precondition(
            "need at least 2 source vertices for a hamiltonian closure",
        ));
    }
    let mut b = GraphBuilder::new(2 * g.n());
    for &(u, v) in g.edges() {
        b.add_edge(u, v);
    }
    for a in 0..p {
        for bb in a + 1..p {
            b.add_edge(p + a, p + bb);
        }
    }
    for u in 0..p {
        for a in 0..p {
            b.add_edge(u, p + a);
        }
    }
    let graph = b.build();
    let mut seq = Vec::with_capacity(2 * g.n());
    for i in 0..p {
        seq.push(p + i);
        seq.push(i);
    }
    let ham_cycle = CycleWitness::new(seq);
    debug_assert!(graph.validate_cycle(&ham_cycle));
    Ok(HamClosureOutput {
        source: g.clone(),
        graph,
        added: (p..2 * p).collect(),
        ham_cycle,
    })
}

/// Shared recovery step of the two closure reductions: a matching that
/// stays inside the source and has at least two edges passes through
/// unchanged; anything else collapses to the lexicographically first
/// source edge.
fn closure_recover(source: &Graph, s: &EdgeSet) -> Result<EdgeSet, Error> {
    let inside = s.iter().all(|(u, v)| source.has_edge(u, v));
    if inside && s.len() >= 2 {
        return Ok(s.clone());
    }
    match source.edges().first() {
        Some(&e) => Ok(EdgeSet::new(vec![e])),
        None => Err(Error::precondition(
            "source graph has no edge to fall back on",
        )),
    }
}

/// Recovers a source induced matching from one found in the closed graph.
pub fn ham_closure_recover(out: &HamClosureOutput, s: &EdgeSet) -> Result<EdgeSet, Error> {
    if !out.graph.is_induced_matching(s) {
        return Err(Error::precondition(
            "witness is not an induced matching in the closed graph",
        ));
    }
    let recovered = closure_recover(&out.source, s)?;
    debug_assert!(out.source.is_induced_matching(&recovered));
    Ok(recovered)
}

/// Output of [`blowup_reduce`]: vertex `u` of the source becomes the
/// `S1` group `s_u` (`group_size` consecutive ids starting at
/// `u * group_size`) and the `S2` group `t_u` (same offsets shifted by
/// `n^4`); the `j`-th vertices of `s_u` and `t_u` are matched by a
/// homogeneous edge.
#[derive(Clone, Debug)]
pub struct BlowupOutput {
    pub source: Graph,
    pub graph: Graph,
    pub group_size: usize,
}

impl BlowupOutput {
    pub fn s_group(&self, u: u32) -> std::ops::Range<u32> {
        let base = u as usize * self.group_size;
        base as u32..(base + self.group_size) as u32
    }

    pub fn t_group(&self, u: u32) -> std::ops::Range<u32> {
        let half = self.source.n() * self.group_size;
        let base = half + u as usize * self.group_size;
        base as u32..(base + self.group_size) as u32
    }

    /// If `(x,y)` is a homogeneous edge, the source vertex it belongs to.
    pub fn homogeneous_source(&self, x: u32, y: u32) -> Option<u32> {
        let half = (self.source.n() * self.group_size) as u32;
        let (a, b) = (x.min(y), x.max(y));
        if a >= half || b < half {
            return None;
        }
        let b = b - half;
        let (gi, gj) = (a / self.group_size as u32, b / self.group_size as u32);
        let same_offset = a % self.group_size as u32 == b % self.group_size as u32;
        (gi == gj && same_offset).then_some(gi)
    }
}

/// Blows every source vertex up to an `n^3`-vertex group per side;
/// groups of one vertex are matched pointwise (homogeneous edges), groups
/// of adjacent vertices are joined completely (heterogeneous edges).
pub fn blowup_reduce(g: &Graph) -> BlowupOutput {
    let n = g.n();
    let cube = n * n * n;
    let half = n * cube;
    let mut b = GraphBuilder::new(2 * half);
    for u in 0..n {
        for j in 0..cube {
            b.add_edge((u * cube + j) as u32, (half + u * cube + j) as u32);
        }
    }
    for &(u, v) in g.edges() {
        for x in 0..cube {
            for y in 0..cube {
                b.add_edge((u as usize * cube + x) as u32, (half + v as usize * cube + y) as u32);
                b.add_edge((v as usize * cube + x) as u32, (half + u as usize * cube + y) as u32);
            }
        }
    }
    let mut sides = vec![Side::S1; half];
    sides.extend(std::iter::repeat(Side::S2).take(half));
    b.set_sides(sides);
    BlowupOutput {
        source: g.clone(),
        graph: b.build(),
        group_size: cube,
    }
}

/// Returns the source vertices whose homogeneous edges appear in the
/// matching; an independent set of the source.
pub fn blowup_to_mis(out: &BlowupOutput, s: &EdgeSet) -> Result<VertexSet, Error> {
    if !out.graph.is_induced_matching(s) {
        return Err(Error::precondition(
            "witness is not an induced matching in the blown-up graph",
        ));
    }
    let set: VertexSet = s
        .iter()
        .filter_map(|(x, y)| out.homogeneous_source(x, y))
        .collect();
    debug_assert!(out.source.is_independent_set(&set));
    Ok(set)
}

/// Output of [`hambip_closure_reduce`]: `left_added` joins the side of
/// the source's `S1`, `right_added` the side of `S2`, and the explicit
/// cycle alternates added and source vertices side by side.
#[derive(Clone, Debug)]
pub struct HamBipClosureOutput {
    pub source: Graph,
    pub graph: Graph,
    pub left_added: Vec<u32>,
    pub right_added: Vec<u32>,
    pub ham_cycle: CycleWitness,
}

/// Closure for equally sided bipartite graphs: adds a complete bipartite
/// block of `p+1` vertices per side, joins source `S1` to the added right
/// side and source `S2` to the added left side. The result is equally
/// sided, Hamiltonian, and keeps the maximum induced matching.
pub fn hambip_closure_reduce(g: &Graph) -> Result<HamBipClosureOutput, Error> {
    let sides = match g.sides() {
        Some(s) => s.to_vec(),
        None => g
            .bipartition()
            .ok_or_else(|| Error::precondition("source graph is not bipartite"))?,
    };
    let v1: Vec<u32> = (0..g.n() as u32).filter(|&v| sides[v as usize] == Side::S1).collect();
    let v2: Vec<u32> = (0..g.n() as u32).filter(|&v| sides[v as usize] == Side::S2).collect();
    if v1.len() != v2.len() {
        return Err(Error::Precondition(format!(
            "sides must be equal, got {} and {}",
            v1.len(),
            v2.len()
        )));
    }
    let p = v1.len();
    if p < 1 {
        return Err(Error::precondition("source graph is empty"));
    }

    let n = g.n() as u32;
    let left_added: Vec<u32> = (n..n + (p + 1) as u32).collect();
    let right_added: Vec<u32> = (n + (p + 1) as u32..n + 2 * (p + 1) as u32).collect();
    let mut b = GraphBuilder::new(g.n() + 2 * (p + 1));
    for &(u, v) in g.edges() {
        b.add_edge(u, v);
    }
    for &l in &left_added {
        for &m in &right_added {
            b.add_edge(l, m);
        }
    }
    for &u in &v1 {
        for &m in &right_added {
            b.add_edge(u, m);
        }
    }
    for &v in &v2 {
        for &l in &left_added {
            b.add_edge(v, l);
        }
    }
    let mut out_sides = vec![Side::S1; g.n() + 2 * (p + 1)];
    for v in 0..g.n() {
        out_sides[v] = sides[v];
    }
    for &l in &left_added {
        out_sides[l as usize] = Side::S1;
    }
    for &m in &right_added {
        out_sides[m as usize] = Side::S2;
    }
    b.set_sides(out_sides);
    let graph = b.build();

    // m1,u1,m2,u2,...,mp,up,m(p+1),l1,v1,...,lp,vp,l(p+1), back to m1
    let mut seq = Vec::with_capacity(graph.n());
    for i in 0..p {
        seq.push(right_added[i]);
        seq.push(v1[i]);
    }
    seq.push(right_added[p]);
    for i in 0..p {
        seq.push(left_added[i]);
        seq.push(v2[i]);
    }
    seq.push(left_added[p]);
    let ham_cycle = CycleWitness::new(seq);
    debug_assert!(graph.validate_cycle(&ham_cycle));

    Ok(HamBipClosureOutput {
        source: g.clone(),
        graph,
        left_added,
        right_added,
        ham_cycle,
    })
}

/// Recovers a source induced matching from one found in the closed
/// bipartite graph.
pub fn hambip_recover(out: &HamBipClosureOutput, s: &EdgeSet) -> Result<EdgeSet, Error> {
    if !out.graph.is_induced_matching(s) {
        return Err(Error::precondition(
            "witness is not an induced matching in the closed graph",
        ));
    }
    let recovered = closure_recover(&out.source, s)?;
    debug_assert!(out.source.is_induced_matching(&recovered));
    Ok(recovered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;
    use crate::graph::{gen_complete, gen_random, gen_random_bipartite, GraphBuilder};
    use crate::solver;

    const BUDGET: u64 = 10_000_000;

    #[test]
    fn image_pendants_only() {
        let g = gen_random(3, 0.0, 1);
        let out = image_reduce(&g);
        assert_eq!(out.graph.n(), 6);
        assert_eq!(out.graph.m(), 3);
        assert_eq!(solver::max_induced_matching(&out.graph, BUDGET).value, 3);
    }

    #[test]
    fn image_of_triangle() {
        let out = image_reduce(&gen_complete(3));
        let mim = solver::max_induced_matching(&out.graph, BUDGET);
        assert_eq!(mim.value, 1);
        assert_eq!(solver::max_independent_set(&out.source, BUDGET).value, 1);
    }

    #[test]
    fn image_preserves_optimum_and_mapping_preserves_size() {
        for seed in 0..30 {
            let g = gen_random(3 + seed as usize % 6, 0.4, seed);
            let out = image_reduce(&g);
            let mim = solver::max_induced_matching(&out.graph, BUDGET);
            let mis = solver::max_independent_set(&g, BUDGET);
            assert_eq!(mim.value, mis.value, "seed {seed}");
            let mapped = matching_to_mis(&out, &mim.witness).unwrap();
            assert_eq!(mapped.len(), mim.witness.len());
            assert!(g.is_independent_set(&mapped));
        }
    }

    #[test]
    fn ham_closure_shape_and_cycle() {
        let g = gen_random(5, 0.5, 3);
        let out = ham_closure_reduce(&g).unwrap();
        assert_eq!(out.graph.n(), 10);
        assert!(out.graph.validate_cycle(&out.ham_cycle));
        assert!(ham_closure_reduce(&gen_random(1, 0.0, 0)).is_err());
    }

    #[test]
    fn ham_closure_matchings_touching_added_vertices_are_singletons() {
        let g = gen_random(4, 0.5, 9);
        let out = ham_closure_reduce(&g).unwrap();
        let p = g.n() as u32;
        for m in brute::all_induced_matchings(&out.graph) {
            let touches_added = m.iter().any(|(u, v)| u >= p || v >= p);
            if touches_added {
                assert_eq!(m.len(), 1);
            }
        }
    }

    #[test]
    fn ham_closure_preserves_optimum() {
        for seed in 0..25 {
            let g = gen_random(2 + seed as usize % 7, 0.5, seed);
            let out = ham_closure_reduce(&g).unwrap();
            assert_eq!(
                solver::max_induced_matching(&out.graph, BUDGET).value,
                solver::max_induced_matching(&g, BUDGET).value,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn ham_closure_recover_paths() {
        let mut b = GraphBuilder::new(5);
        for &(u, v) in &[(0, 1), (2, 3), (3, 4)] {
            b.add_edge(u, v);
        }
        let g = b.build();
        let out = ham_closure_reduce(&g).unwrap();
        // two disjoint far-apart source edges pass through unchanged
        let s = EdgeSet::new(vec![(0, 1), (3, 4)]);
        assert_eq!(ham_closure_recover(&out, &s).unwrap(), s);
        // a single edge using an added vertex falls back to the first edge
        let added = EdgeSet::new(vec![(0, 5)]);
        assert_eq!(
            ham_closure_recover(&out, &added).unwrap(),
            EdgeSet::new(vec![(0, 1)])
        );
        // the empty matching also falls back
        assert_eq!(
            ham_closure_recover(&out, &EdgeSet::new(vec![])).unwrap(),
            EdgeSet::new(vec![(0, 1)])
        );
    }

    #[test]
    fn blowup_sizes() {
        let g = gen_random(2, 1.0, 0);
        let out = blowup_reduce(&g);
        assert_eq!(out.graph.n(), 32);
        assert_eq!(out.group_size, 8);
        assert!(out.graph.monochromatic_edge().is_none());
    }

    #[test]
    fn blowup_bounds_for_a_single_edge() {
        let g = gen_random(2, 1.0, 0);
        let out = blowup_reduce(&g);
        let opt_g = brute::max_independent_set_exhaustive(&g) as u64;
        let mim = solver::max_induced_matching(&out.graph, BUDGET);
        assert_eq!(mim.status, solver::Status::Optimal);
        let n = g.n() as u64;
        let cube = out.group_size as u64;
        assert!(cube * opt_g <= mim.value as u64);
        assert!((mim.value as u64) <= cube * opt_g + n * (n - 1));
    }

    #[test]
    fn blowup_full_homogeneous_group_is_induced() {
        let g = gen_random(2, 1.0, 0);
        let out = blowup_reduce(&g);
        for u in 0..2u32 {
            let m: EdgeSet = out
                .s_group(u)
                .zip(out.t_group(u))
                .collect();
            assert_eq!(m.len(), out.group_size);
            assert!(out.graph.is_induced_matching(&m));
        }
    }

    #[test]
    fn blowup_witness_maps_to_independent_set() {
        let g = gen_random(2, 0.0, 0);
        let out = blowup_reduce(&g);
        let mim = solver::max_induced_matching(&out.graph, BUDGET);
        assert_eq!(mim.value as usize, 2 * out.group_size);
        let set = blowup_to_mis(&out, &mim.witness).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn hambip_shape_cycle_and_optimum() {
        // perfect matching on 3+3
        let mut b = GraphBuilder::new(6);
        b.add_edge(0, 3);
        b.add_edge(1, 4);
        b.add_edge(2, 5);
        b.set_sides(vec![
            Side::S1,
            Side::S1,
            Side::S1,
            Side::S2,
            Side::S2,
            Side::S2,
        ]);
        let g = b.build();
        let out = hambip_closure_reduce(&g).unwrap();
        assert_eq!(out.graph.n(), 4 * 3 + 2);
        assert!(out.graph.validate_cycle(&out.ham_cycle));
        let sides = out.graph.sides().unwrap();
        let s1 = sides.iter().filter(|s| **s == Side::S1).count();
        assert_eq!(s1 * 2, out.graph.n());
        assert_eq!(solver::max_induced_matching(&out.graph, BUDGET).value, 3);
    }

    #[test]
    fn hambip_rejects_unequal_sides() {
        let g = crate::graph::gen_complete_bipartite(2, 3);
        assert!(hambip_closure_reduce(&g).is_err());
    }

    #[test]
    fn hambip_preserves_optimum_on_random_bipartite_graphs() {
        for seed in 0..25 {
            let p = 1 + seed as usize % 4;
            let g = gen_random_bipartite(p, 0.5, seed);
            let out = hambip_closure_reduce(&g).unwrap();
            assert_eq!(
                solver::max_induced_matching(&out.graph, BUDGET).value,
                solver::max_induced_matching(&g, BUDGET).value,
                "seed {seed}"
            );
            let mim = solver::max_induced_matching(&out.graph, BUDGET);
            if g.m() > 0 {
                let rec = hambip_recover(&out, &mim.witness).unwrap();
                assert!(out.source.is_induced_matching(&rec));
            }
        }
    }
}
