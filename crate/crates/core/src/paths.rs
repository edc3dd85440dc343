//! Constructive path and circuit machinery: Hierholzer's Eulerian
//! circuit, line (edge) graphs, Hamiltonian cycles in line graphs of odd
//! complete graphs, and endpoint-prescribed Hamiltonian paths in balanced
//! complete bipartite graphs and their dense relatives.
//!
//! Everything here is deterministic: ties always break toward the lowest
//! vertex id, so reduction outputs built on top are byte-stable across
//! runs.

use crate::error::Error;
use crate::graph::{gen_complete, CycleWitness, Graph, Side};

/// An edge walk: an ordered list of unordered edges plus the designated
/// start vertex, from which the traversal orientation follows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSequence {
    pub edges: Vec<(u32, u32)>,
    pub start: u32,
}

impl EdgeSequence {
    /// The vertex walk implied by the start vertex: one more entry than
    /// edges; for a circuit the last entry equals `start`.
    pub fn vertex_walk(&self) -> Vec<u32> {
        let mut walk = vec![self.start];
        let mut cur = self.start;
        for &(a, b) in &self.edges {
            cur = if a == cur {
                b
            } else {
                debug_assert_eq!(b, cur, "edge sequence is not a walk");
                a
            };
            walk.push(cur);
        }
        walk
    }
}

/// A line graph together with the bijection from its vertex ids back to
/// the source graph's edges (vertex `i` represents `source_edges[i]`).
#[derive(Clone, Debug)]
pub struct LineGraphMap {
    pub graph: Graph,
    pub source_edges: Vec<(u32, u32)>,
}

/// Eulerian circuit by Hierholzer's algorithm with lowest-id-neighbor
/// splicing.
///
/// Requires every vertex to have even degree and all edges to lie in one
/// component. The circuit starts (and ends) at the lowest-id non-isolated
/// vertex and visits every edge exactly once.
pub fn eulerian_circuit(g: &Graph) -> Result<EdgeSequence, Error> {
    if g.m() == 0 {
        return Err(Error::precondition("graph has no edges"));
    }
    for v in 0..g.n() as u32 {
        let d = g.degree(v);
        if d % 2 != 0 {
            return Err(Error::Precondition(format!(
                "vertex {v} has odd degree {d}"
            )));
        }
    }
    let start = (0..g.n() as u32).find(|&v| g.degree(v) > 0).unwrap();

    // all edges must be reachable from the start
    {
        let mut seen = vec![false; g.n()];
        let mut stack = vec![start];
        seen[start as usize] = true;
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = (0..g.n() as u32).find(|&v| g.degree(v) > 0 && !seen[v as usize]) {
            return Err(Error::Precondition(format!(
                "vertex {v} is not connected to the rest of the edge set"
            )));
        }
    }

    // neighbor lists are already ascending; cursor per vertex plus a used
    // mark per edge index
    let mut edge_index = std::collections::HashMap::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        edge_index.insert((u, v), i);
    }
    let index_of = |u: u32, v: u32| edge_index[&(u.min(v), u.max(v))];
    let nbrs: Vec<Vec<u32>> = (0..g.n() as u32).map(|v| g.neighbors(v).collect()).collect();
    let mut cursor = vec![0usize; g.n()];
    let mut used = vec![false; g.m()];

    let mut stack = vec![start];
    let mut walk_rev = Vec::with_capacity(g.m() + 1);
    while let Some(&v) = stack.last() {
        let adv = &mut cursor[v as usize];
        let mut moved = false;
        while *adv < nbrs[v as usize].len() {
            let w = nbrs[v as usize][*adv];
            *adv += 1;
            let ei = index_of(v, w);
            if !used[ei] {
                used[ei] = true;
                stack.push(w);
                moved = true;
                break;
            }
        }
        if !moved {
            walk_rev.push(stack.pop().unwrap());
        }
    }
    walk_rev.reverse();
    debug_assert_eq!(walk_rev.len(), g.m() + 1);
    debug_assert_eq!(walk_rev[0], start);
    debug_assert_eq!(*walk_rev.last().unwrap(), start);

    let edges = walk_rev
        .windows(2)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect();
    Ok(EdgeSequence { edges, start })
}

/// Line graph: one vertex per source edge (in the source's lexicographic
/// edge order), adjacent iff the edges share an endpoint.
pub fn line_graph(g: &Graph) -> LineGraphMap {
    let source_edges: Vec<(u32, u32)> = g.edges().to_vec();
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in source_edges.iter().enumerate() {
        incident[u as usize].push(i as u32);
        incident[v as usize].push(i as u32);
    }
    let mut b = crate::graph::GraphBuilder::new(source_edges.len());
    for inc in &incident {
        for (i, &a) in inc.iter().enumerate() {
            for &c in &inc[i + 1..] {
                b.add_edge(a, c);
            }
        }
    }
    LineGraphMap {
        graph: b.build(),
        source_edges,
    }
}

/// Hamiltonian cycle in the line graph of the complete graph on an odd
/// number `l >= 3` of vertices, obtained by reading an Eulerian circuit
/// of the complete graph as a vertex sequence of the line graph.
pub fn line_graph_ham_cycle(l: usize) -> Result<(LineGraphMap, CycleWitness), Error> {
    if l < 3 || l % 2 == 0 {
        return Err(Error::Precondition(format!(
            "need an odd vertex count >= 3, got {l}"
        )));
    }
    let g = gen_complete(l);
    let circuit = eulerian_circuit(&g)?;
    let lg = line_graph(&g);
    let mut index = std::collections::HashMap::new();
    for (i, &e) in lg.source_edges.iter().enumerate() {
        index.insert(e, i as u32);
    }
    let cycle = CycleWitness::new(circuit.edges.iter().map(|e| index[e]).collect());
    assert!(
        lg.graph.validate_cycle(&cycle),
        "eulerian circuit did not induce a hamiltonian cycle"
    );
    Ok((lg, cycle))
}

/// Endpoint-prescribed Hamiltonian path in the complete bipartite graph
/// `K_{n,n}` laid out with side `S1 = 0..n` and `S2 = n..2n`.
///
/// `u` and `v` must lie on opposite sides. The remaining vertices are
/// consumed as pairs `(far-side, near-side)`; by default the ascending-id
/// pairing, or a caller-supplied one. The result is
/// `u, v1, u1, ..., v(n-1), u(n-1), v`.
pub fn balanced_kb_ham_path(
    n: usize,
    u: u32,
    v: u32,
    pairing: Option<&[(u32, u32)]>,
) -> Result<Vec<u32>, Error> {
    if n == 0 {
        return Err(Error::precondition("empty side"));
    }
    let total = 2 * n as u32;
    if u >= total || v >= total {
        return Err(Error::precondition("endpoint out of range"));
    }
    let side = |x: u32| if x < n as u32 { Side::S1 } else { Side::S2 };
    if side(u) == side(v) {
        return Err(Error::Precondition(format!(
            "endpoints {u} and {v} are on the same side"
        )));
    }
    let near: Vec<u32> = (0..total).filter(|&x| side(x) == side(u) && x != u).collect();
    let far: Vec<u32> = (0..total).filter(|&x| side(x) == side(v) && x != v).collect();

    let pairs: Vec<(u32, u32)> = match pairing {
        None => far.iter().copied().zip(near.iter().copied()).collect(),
        Some(p) => {
            if p.len() != n - 1 {
                return Err(Error::precondition("pairing must cover all remaining vertices"));
            }
            let mut seen_far: Vec<u32> = p.iter().map(|&(f, _)| f).collect();
            let mut seen_near: Vec<u32> = p.iter().map(|&(_, nr)| nr).collect();
            seen_far.sort_unstable();
            seen_near.sort_unstable();
            if seen_far != far || seen_near != near {
                return Err(Error::precondition(
                    "pairing is not a perfect pairing of the remaining vertices",
                ));
            }
            p.to_vec()
        }
    };

    let mut path = Vec::with_capacity(2 * n);
    path.push(u);
    for &(f, nr) in &pairs {
        path.push(f);
        path.push(nr);
    }
    path.push(v);
    Ok(path)
}

/// Endpoint-prescribed Hamiltonian path in a two-sided graph that is
/// complete bipartite minus a sparse forbidden-pair set.
///
/// `left`/`right` are the two sides (equal length), `start ∈ left`,
/// `end ∈ right`, and `adjacent` answers cross-side adjacency. The path
/// follows the balanced pairing scheme greedily (lowest id first) and
/// repairs a conflict by swapping an already-placed vertex with a later
/// compatible one. Intended for graphs where each vertex has only a few
/// non-neighbors on the other side and each side has at least 7 vertices;
/// on anything else it may fail, in which case the error carries the
/// partial path. Every returned path has been validated edge by edge.
pub fn ham_path_avoiding(
    left: &[u32],
    right: &[u32],
    start: u32,
    end: u32,
    adjacent: &dyn Fn(u32, u32) -> bool,
) -> Result<Vec<u32>, Error> {
    if left.len() != right.len() || left.is_empty() {
        return Err(Error::precondition("sides must be non-empty and balanced"));
    }
    if !left.contains(&start) || !right.contains(&end) {
        return Err(Error::precondition(
            "start must lie in the left side and end in the right side",
        ));
    }
    let n = left.len();
    let mut rem_right: Vec<u32> = right.iter().copied().filter(|&x| x != end).collect();
    let mut rem_left: Vec<u32> = left.iter().copied().filter(|&x| x != start).collect();
    rem_right.sort_unstable();
    rem_left.sort_unstable();

    let mut path = Vec::with_capacity(2 * n);
    path.push(start);
    for _ in 0..n - 1 {
        if !extend(&mut path, &mut rem_right, adjacent) || !extend(&mut path, &mut rem_left, adjacent) {
            return Err(Error::PathRepair { placed: path });
        }
    }
    if !close(&mut path, end, adjacent) {
        return Err(Error::PathRepair { placed: path });
    }

    // mandatory validation: alternation is structural, adjacency is not
    debug_assert_eq!(path.len(), 2 * n);
    for w in path.windows(2) {
        if !adjacent(w[0], w[1]) {
            return Err(Error::PathRepair { placed: path });
        }
    }
    Ok(path)
}

/// Appends the lowest-id compatible vertex from `rem`, or repairs by
/// swapping a conflicting placed vertex of the same side with a later
/// compatible candidate.
fn extend(path: &mut Vec<u32>, rem: &mut Vec<u32>, adjacent: &dyn Fn(u32, u32) -> bool) -> bool {
    let last = *path.last().unwrap();
    if let Some(pos) = rem.iter().position(|&c| adjacent(last, c)) {
        let c = rem.remove(pos);
        path.push(c);
        return true;
    }
    // every remaining candidate conflicts with `last`; look for a placed
    // same-side vertex y we can append instead, putting some candidate z
    // into y's old slot
    let slot = path.len();
    let parity = slot % 2;
    let mut j = if parity == 0 { 2 } else { 1 };
    while j + 1 < path.len() {
        let y = path[j];
        if adjacent(last, y) {
            if let Some(zi) = rem
                .iter()
                .position(|&z| adjacent(path[j - 1], z) && adjacent(z, path[j + 1]))
            {
                path[j] = rem.remove(zi);
                path.push(y);
                return true;
            }
        }
        j += 2;
    }
    false
}

/// Appends the prescribed final vertex, swapping the last placed vertex
/// with an earlier same-side one if the closing edge is missing.
fn close(path: &mut Vec<u32>, end: u32, adjacent: &dyn Fn(u32, u32) -> bool) -> bool {
    let last = *path.last().unwrap();
    if adjacent(last, end) {
        path.push(end);
        return true;
    }
    if path.len() < 3 {
        return false;
    }
    let li = path.len() - 1; // index of the misplaced last vertex
    let mut j = li % 2;
    if j == 0 {
        j = 2; // never move the start vertex
    }
    while j + 1 < li {
        let y = path[j];
        if adjacent(y, end)
            && adjacent(path[li - 1], y)
            && adjacent(path[j - 1], last)
            && adjacent(last, path[j + 1])
        {
            path[j] = last;
            path[li] = y;
            path.push(end);
            return true;
        }
        j += 2;
    }
    false
}

/// [`ham_path_avoiding`] over an explicit side-labeled graph: `u` must be
/// an `S1` vertex and `v` an `S2` vertex, and the path uses the graph's
/// own adjacency.
pub fn dense_bipartite_ham_path(g: &Graph, u: u32, v: u32) -> Result<Vec<u32>, Error> {
    let sides = g
        .sides()
        .ok_or_else(|| Error::precondition("graph has no side labels"))?;
    if (u as usize) >= g.n() || (v as usize) >= g.n() {
        return Err(Error::precondition("endpoint out of range"));
    }
    if sides[u as usize] == sides[v as usize] {
        return Err(Error::Precondition(format!(
            "endpoints {u} and {v} are on the same side"
        )));
    }
    let left: Vec<u32> = (0..g.n() as u32).filter(|&x| sides[x as usize] == sides[u as usize]).collect();
    let right: Vec<u32> = (0..g.n() as u32).filter(|&x| sides[x as usize] == sides[v as usize]).collect();
    ham_path_avoiding(&left, &right, u, v, &|a, b| g.has_edge(a, b))
}

/// Checks that `path` is a Hamiltonian path of the vertex set
/// `left ∪ right` under `adjacent`, alternating sides. Used by tests and
/// by callers that stitch paths together.
pub fn validate_two_sided_path(
    path: &[u32],
    left: &[u32],
    right: &[u32],
    adjacent: &dyn Fn(u32, u32) -> bool,
) -> bool {
    if path.len() != left.len() + right.len() {
        return false;
    }
    let mut expected: Vec<u32> = left.iter().chain(right.iter()).copied().collect();
    expected.sort_unstable();
    let mut got: Vec<u32> = path.to_vec();
    got.sort_unstable();
    if got != expected {
        return false;
    }
    path.windows(2).all(|w| adjacent(w[0], w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete_bipartite, gen_path, GraphBuilder};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k3_circuit() {
        let circ = eulerian_circuit(&gen_complete(3)).unwrap();
        assert_eq!(circ.start, 0);
        assert_eq!(circ.edges.len(), 3);
        let walk = circ.vertex_walk();
        assert_eq!(walk.first(), Some(&0));
        assert_eq!(walk.last(), Some(&0));
    }

    #[test]
    fn k5_circuit_covers_every_edge_once() {
        let g = gen_complete(5);
        let circ = eulerian_circuit(&g).unwrap();
        assert_eq!(circ.edges.len(), 10);
        let mut seen = circ.edges.clone();
        seen.sort_unstable();
        assert_eq!(seen, g.edges());
        // consecutive edges share an endpoint and the walk closes
        let walk = circ.vertex_walk();
        assert_eq!(walk[0], circ.start);
        assert_eq!(*walk.last().unwrap(), circ.start);
    }

    #[test]
    fn odd_degree_rejected() {
        let err = eulerian_circuit(&gen_path(2)).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("odd degree")));
    }

    #[test]
    fn disconnected_edges_rejected() {
        // two disjoint triangles
        let mut b = GraphBuilder::new(6);
        for &(u, v) in &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            b.add_edge(u, v);
        }
        let err = eulerian_circuit(&b.build()).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("not connected")));
    }

    #[test]
    fn line_graph_path3() {
        let lg = line_graph(&gen_path(3));
        assert_eq!(lg.graph.n(), 2);
        assert_eq!(lg.graph.edges(), &[(0, 1)]);
    }

    #[test]
    fn line_graph_k3_is_self_dual() {
        let lg = line_graph(&gen_complete(3));
        assert_eq!(lg.graph.n(), 3);
        assert_eq!(lg.graph.m(), 3);
    }

    #[test]
    fn line_graph_k5_degrees() {
        let lg = line_graph(&gen_complete(5));
        assert_eq!(lg.graph.n(), 10);
        for v in 0..10 {
            assert_eq!(lg.graph.degree(v), 6);
        }
    }

    #[test]
    fn ham_cycles_in_line_graphs_of_odd_complete_graphs() {
        for l in [3usize, 5, 7] {
            let (lg, cycle) = line_graph_ham_cycle(l).unwrap();
            assert_eq!(cycle.len(), l * (l - 1) / 2);
            assert!(lg.graph.validate_cycle(&cycle));
        }
        assert!(line_graph_ham_cycle(4).is_err());
        assert!(line_graph_ham_cycle(1).is_err());
    }

    #[test]
    fn balanced_path_smallest() {
        assert_eq!(balanced_kb_ham_path(1, 0, 1, None).unwrap(), vec![0, 1]);
    }

    #[test]
    fn balanced_path_alternates() {
        let p = balanced_kb_ham_path(3, 0, 3, None).unwrap();
        assert_eq!(p.len(), 6);
        let g = gen_complete_bipartite(3, 3);
        assert!(validate_two_sided_path(
            &p,
            &[0, 1, 2],
            &[3, 4, 5],
            &|a, b| g.has_edge(a, b)
        ));
        assert!(balanced_kb_ham_path(3, 0, 1, None).is_err());
    }

    #[test]
    fn balanced_path_with_random_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = gen_complete_bipartite(5, 5);
        for _ in 0..20 {
            let u = rng.gen_range(0..5);
            let v = rng.gen_range(5..10);
            let mut far: Vec<u32> = (5..10).filter(|&x| x != v).collect();
            let mut near: Vec<u32> = (0..5).filter(|&x| x != u).collect();
            far.shuffle(&mut rng);
            near.shuffle(&mut rng);
            let pairing: Vec<(u32, u32)> = far.into_iter().zip(near).collect();
            let p = balanced_kb_ham_path(5, u, v, Some(&pairing)).unwrap();
            assert_eq!(p[0], u);
            assert_eq!(*p.last().unwrap(), v);
            let left: Vec<u32> = (0..5).collect();
            let right: Vec<u32> = (5..10).collect();
            assert!(validate_two_sided_path(&p, &left, &right, &|a, b| g.has_edge(a, b)));
        }
    }

    #[test]
    fn dense_path_degenerates_to_balanced() {
        let g = gen_complete_bipartite(7, 7);
        let p = dense_bipartite_ham_path(&g, 0, 7).unwrap();
        let q = balanced_kb_ham_path(7, 0, 7, None).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn dense_path_with_forbidden_pairs() {
        // complete bipartite 9+9 minus up to 3 non-neighbors per vertex
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..50 {
            let n = 9u32;
            let mut forbidden = std::collections::HashSet::new();
            for l in 0..n {
                let k = rng.gen_range(0..=3);
                for _ in 0..k {
                    forbidden.insert((l, n + rng.gen_range(0..n)));
                }
            }
            // keep the per-vertex non-neighbor count on the right side small too
            let mut right_cnt = vec![0; n as usize];
            forbidden.retain(|&(_, r)| {
                let c = &mut right_cnt[(r - n) as usize];
                *c += 1;
                *c <= 3
            });
            let adj = |a: u32, b: u32| {
                let (l, r) = if a < n { (a, b) } else { (b, a) };
                !forbidden.contains(&(l, r))
            };
            let left: Vec<u32> = (0..n).collect();
            let right: Vec<u32> = (n..2 * n).collect();
            let (start, end) = (0u32, n);
            if !adj(start, end) && forbidden.len() == 0 {
                continue;
            }
            let p = ham_path_avoiding(&left, &right, start, end, &adj)
                .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
            assert!(validate_two_sided_path(&p, &left, &right, &adj));
        }
    }
}
