//! Gap-introducing clique reduction: two interconnected copies of the
//! source graph plus one apex vertex, so a `k`-clique on one side
//! corresponds to a `2k+1`-clique on the other. Witnesses map across the
//! reduction in both directions.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Graph, GraphBuilder, VertexSet};

/// Output of [`reduce`]. Layout is fixed: the first copy keeps ids
/// `0..n`, the second gets `n..2n`, and the apex is `2n`.
#[derive(Clone, Debug)]
pub struct CliqueGapOutput {
    pub source: Graph,
    pub graph: Graph,
    pub copy1: Vec<u32>,
    pub copy2: Vec<u32>,
    pub apex: u32,
    pub k: u32,
    pub target: u32,
}

/// Provenance sidecar schema for this reduction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CliqueGapSidecar {
    pub copy1: Vec<u32>,
    pub copy2: Vec<u32>,
    pub apex: u32,
    pub k: u32,
    pub target: u32,
}

impl CliqueGapOutput {
    pub fn sidecar(&self) -> CliqueGapSidecar {
        CliqueGapSidecar {
            copy1: self.copy1.clone(),
            copy2: self.copy2.clone(),
            apex: self.apex,
            k: self.k,
            target: self.target,
        }
    }
}

/// Builds the doubled graph: both copies keep the source's edges, every
/// cross-copy pair is joined, and the apex is joined to everything.
pub fn reduce(g: &Graph, k: u32) -> Result<CliqueGapOutput, Error> {
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    let n = g.n() as u32;
    let mut b = GraphBuilder::new(2 * g.n() + 1);
    for &(u, v) in g.edges() {
        b.add_edge(u, v);
        b.add_edge(n + u, n + v);
    }
    for u in 0..n {
        for v in 0..n {
            b.add_edge(u, n + v);
        }
    }
    let apex = 2 * n;
    for u in 0..2 * n {
        b.add_edge(u, apex);
    }
    Ok(CliqueGapOutput {
        source: g.clone(),
        graph: b.build(),
        copy1: (0..n).collect(),
        copy2: (n..2 * n).collect(),
        apex,
        k,
        target: 2 * k + 1,
    })
}

/// Maps a `k`-clique of the source to a `2k+1`-clique of the output:
/// both copies of the clique plus the apex.
pub fn lift_clique(out: &CliqueGapOutput, c: &VertexSet) -> Result<VertexSet, Error> {
    if c.len() as u32 != out.k {
        return Err(Error::Precondition(format!(
            "expected a clique of size {}, got {}",
            out.k,
            c.len()
        )));
    }
    if !out.source.is_clique(c) {
        return Err(Error::precondition("witness is not a clique in the source graph"));
    }
    let n = out.source.n() as u32;
    let lifted: VertexSet = c
        .iter()
        .flat_map(|v| [v, n + v])
        .chain(std::iter::once(out.apex))
        .collect();
    debug_assert!(out.graph.is_clique(&lifted));
    Ok(lifted)
}

/// Maps a clique of size at least `2k+1` in the output back to a clique
/// of size at least `k` in the source, by taking the larger of its two
/// copy restrictions (ties toward the first copy).
pub fn project_clique(out: &CliqueGapOutput, c: &VertexSet) -> Result<VertexSet, Error> {
    if (c.len() as u32) < out.target {
        return Err(Error::Precondition(format!(
            "expected a clique of size at least {}, got {}",
            out.target,
            c.len()
        )));
    }
    if !out.graph.is_clique(c) {
        return Err(Error::precondition("witness is not a clique in the output graph"));
    }
    let n = out.source.n() as u32;
    let c1: Vec<u32> = c.iter().filter(|&v| v < n).collect();
    let c2: Vec<u32> = c.iter().filter(|&v| v >= n && v < 2 * n).map(|v| v - n).collect();
    let chosen = if c1.len() >= c2.len() { c1 } else { c2 };
    let projected = VertexSet::new(chosen);
    debug_assert!(out.source.is_clique(&projected));
    debug_assert!(projected.len() as u32 >= out.k);
    Ok(projected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;
    use crate::graph::{gen_complete, gen_path, gen_random};
    use crate::solver::{self};

    #[test]
    fn smallest_case_is_a_triangle() {
        let out = reduce(&gen_complete(1), 1).unwrap();
        assert_eq!(out.graph.n(), 3);
        assert_eq!(out.graph.m(), 3);
        assert_eq!(out.target, 3);
    }

    #[test]
    fn vertex_count_is_doubled_plus_one() {
        for n in [1usize, 4, 9] {
            let g = gen_random(n, 0.5, n as u64);
            let out = reduce(&g, 2).unwrap();
            assert_eq!(out.graph.n(), 2 * n + 1);
        }
    }

    #[test]
    fn path_with_k2_yields_a_5_clique() {
        let out = reduce(&gen_path(3), 2).unwrap();
        let mc = solver::max_clique(&out.graph, 1_000_000);
        assert_eq!(mc.value, 5);
    }

    #[test]
    fn copies_induce_the_source_and_cross_pairs_are_complete() {
        let g = gen_random(6, 0.4, 7);
        let out = reduce(&g, 1).unwrap();
        let n = g.n() as u32;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    assert_eq!(out.graph.has_edge(u, v), g.has_edge(u, v));
                    assert_eq!(out.graph.has_edge(n + u, n + v), g.has_edge(u, v));
                }
                assert!(out.graph.has_edge(u, n + v));
            }
            assert!(out.graph.has_edge(u, out.apex));
            assert!(out.graph.has_edge(n + u, out.apex));
        }
    }

    #[test]
    fn lift_then_project_recovers_a_clique() {
        let g = gen_complete(3);
        let out = reduce(&g, 3).unwrap();
        let c = VertexSet::new(vec![0, 1, 2]);
        let lifted = lift_clique(&out, &c).unwrap();
        assert_eq!(lifted.len(), 7);
        assert!(out.graph.is_clique(&lifted));
        let back = project_clique(&out, &lifted).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn lift_rejects_non_cliques_and_wrong_sizes() {
        let g = gen_path(3);
        let out = reduce(&g, 2).unwrap();
        assert!(lift_clique(&out, &VertexSet::new(vec![])).is_err());
        assert!(lift_clique(&out, &VertexSet::new(vec![0, 2])).is_err());
    }

    #[test]
    fn projection_respects_the_pigeonhole_bound() {
        let g = gen_random(7, 0.8, 11);
        let out = reduce(&g, 1).unwrap();
        let mc = solver::max_clique(&out.graph, 1_000_000);
        let projected = project_clique(&out, &mc.witness).unwrap();
        assert!(projected.len() as u32 >= (mc.value - 1).div_ceil(2));
    }

    #[test]
    fn exact_optimum_relation_on_small_graphs() {
        for seed in 0..40 {
            let n = 2 + (seed as usize % 8);
            let g = gen_random(n, 0.5, seed);
            let out = reduce(&g, 1 + (seed % 3) as u32).unwrap();
            let lhs = brute::max_clique_exhaustive(&out.graph);
            let rhs = 2 * brute::max_clique_exhaustive(&g) + 1;
            assert_eq!(lhs, rhs, "seed {seed}");
        }
    }
}
