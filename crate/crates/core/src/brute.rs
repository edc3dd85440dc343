//! Exhaustive reference oracles.
//!
//! These enumerate vertex subsets outright (so they are limited to small
//! graphs) and share no code with the branch-and-bound solvers they are
//! used to cross-check.

use crate::graph::{EdgeSet, Graph};

const MAX_N: usize = 24;

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= MAX_N, "exhaustive oracle capped at {MAX_N} vertices");
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    adj
}

fn subset_vertices(mask: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Size of a maximum clique, by checking all vertex subsets.
pub fn max_clique_exhaustive(g: &Graph) -> u32 {
    let adj = adjacency_masks(g);
    let mut best = 0u32;
    for mask in 0u32..1 << g.n() {
        if mask.count_ones() <= best {
            continue;
        }
        let ok = subset_vertices(mask).all(|v| {
            let others = mask & !(1 << v);
            others & !adj[v as usize] == 0
        });
        if ok {
            best = mask.count_ones();
        }
    }
    best
}

/// Size of a maximum independent set, by checking all vertex subsets.
pub fn max_independent_set_exhaustive(g: &Graph) -> u32 {
    let adj = adjacency_masks(g);
    let mut best = 0u32;
    for mask in 0u32..1 << g.n() {
        if mask.count_ones() <= best {
            continue;
        }
        let ok = subset_vertices(mask).all(|v| mask & adj[v as usize] == 0);
        if ok {
            best = mask.count_ones();
        }
    }
    best
}

/// Size of a maximum induced matching, by checking all vertex subsets for
/// inducing a 1-regular subgraph. Works for any edge count since it never
/// enumerates edge subsets.
pub fn max_induced_matching_exhaustive(g: &Graph) -> u32 {
    let adj = adjacency_masks(g);
    let mut best = 0u32;
    for mask in 0u32..1 << g.n() {
        let size = mask.count_ones() / 2;
        if size <= best || mask.count_ones() % 2 != 0 {
            continue;
        }
        let ok = subset_vertices(mask).all(|v| (mask & adj[v as usize]).count_ones() == 1);
        if ok {
            best = size;
        }
    }
    best
}

/// Every induced matching of `g`, as explicit edge sets (including the
/// empty one).
pub fn all_induced_matchings(g: &Graph) -> Vec<EdgeSet> {
    let adj = adjacency_masks(g);
    let mut out = Vec::new();
    for mask in 0u32..1 << g.n() {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let ok = subset_vertices(mask).all(|v| (mask & adj[v as usize]).count_ones() == 1);
        if ok {
            let edges = subset_vertices(mask)
                .flat_map(|u| {
                    subset_vertices(mask & adj[u as usize])
                        .filter(move |&v| u < v)
                        .map(move |v| (u, v))
                })
                .collect();
            out.push(edges);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_complete_bipartite, gen_cycle, gen_path};

    #[test]
    fn known_values() {
        assert_eq!(max_clique_exhaustive(&gen_complete(5)), 5);
        assert_eq!(max_clique_exhaustive(&gen_cycle(5)), 2);
        assert_eq!(max_independent_set_exhaustive(&gen_complete(5)), 1);
        assert_eq!(max_independent_set_exhaustive(&gen_cycle(5)), 2);
        assert_eq!(max_induced_matching_exhaustive(&gen_path(5)), 2);
        assert_eq!(max_induced_matching_exhaustive(&gen_complete_bipartite(3, 3)), 1);
    }

    #[test]
    fn enumeration_agrees_with_maximum() {
        let g = gen_cycle(7);
        let all = all_induced_matchings(&g);
        assert!(all.iter().all(|m| g.is_induced_matching(m)));
        let best = all.iter().map(|m| m.len() as u32).max().unwrap();
        assert_eq!(best, max_induced_matching_exhaustive(&g));
    }
}
