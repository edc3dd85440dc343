//! Desk-scale exact solvers: maximum clique, maximum independent set, and
//! maximum induced matching, in optimization and decision variants.
//!
//! One branch-and-bound core does all the work: a Tomita-style search
//! with a greedy-coloring upper bound over bitset adjacency rows.
//! Independent set solves the complement; induced matching solves the
//! independent set problem on the conflict graph of the input's edges
//! (two edges conflict when they share an endpoint or are joined by an
//! edge), so one solver core serves all three problems and the
//! matching/independent-set duality is checkable for free.
//!
//! Determinism: vertices are branched highest-degree-first with ties
//! broken by id, and the budget is a node count rather than wall time, so
//! the same graph and budget always produce the same value and witness.

use std::time::{Duration, Instant};

use crate::bits::{self, Words};
use crate::graph::{EdgeSet, Graph, GraphBuilder, VertexSet};

/// Whether a solve ran to proven optimality or stopped at its node budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    BudgetExhausted,
}

/// Result of an optimization solve. When `status` is `Optimal` the
/// witness has size `value` and `value` is the true optimum; otherwise it
/// is the best solution found within the budget.
#[derive(Clone, Debug)]
pub struct SolveResult<W> {
    pub value: u32,
    pub witness: W,
    pub status: Status,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Answer of a decision solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    /// A witness of at least the target size.
    Yes(W),
    /// Proven: no solution of the target size exists.
    No,
    /// Budget ran out before either a witness or a proof was found.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct Decision<W> {
    pub verdict: Verdict<W>,
    pub nodes: u64,
    pub elapsed: Duration,
}

struct Search {
    rows: Vec<Words>,
    words: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    stop: bool,
    target: Option<u32>,
    best: u32,
    best_set: Vec<u32>,
    improved: bool,
    cur: Vec<u32>,
    cands: Vec<Words>,
    avail: Vec<Words>,
    unc: Vec<Words>,
    orders: Vec<Vec<(u32, u32)>>,
}

impl Search {
    fn new(rows: Vec<Words>, n: usize, budget: u64, target: Option<u32>) -> Self {
        Search {
            rows,
            words: bits::words_for(n),
            budget,
            nodes: 0,
            exhausted: false,
            stop: false,
            target,
            best: target.map_or(0, |t| t.saturating_sub(1)),
            best_set: Vec::new(),
            improved: false,
            cur: Vec::new(),
            cands: Vec::new(),
            avail: Vec::new(),
            unc: Vec::new(),
            orders: Vec::new(),
        }
    }

    fn ensure_depth(&mut self, depth: usize) {
        while self.cands.len() <= depth {
            self.cands.push(bits::Words::from_elem(0, self.words));
            self.avail.push(bits::Words::from_elem(0, self.words));
            self.unc.push(bits::Words::from_elem(0, self.words));
            self.orders.push(Vec::new());
        }
    }

    fn run(&mut self, full: Words) {
        self.ensure_depth(0);
        self.cands[0].copy_from_slice(&full);
        if bits::is_empty(&self.cands[0]) {
            return;
        }
        self.expand(0);
    }

    fn expand(&mut self, depth: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        self.ensure_depth(depth + 1);

        // Greedy coloring of the candidate set in fixed vertex order;
        // vertices come out grouped by color, colors ascending. The color
        // of a vertex bounds the clique size reachable through it.
        let mut order = std::mem::take(&mut self.orders[depth]);
        order.clear();
        {
            let mut unc = std::mem::take(&mut self.unc[depth]);
            let mut avail = std::mem::take(&mut self.avail[depth]);
            unc.copy_from_slice(&self.cands[depth]);
            let mut color = 0u32;
            let mut unc_from = 0usize;
            while bits::first_set_from(&unc, &mut unc_from).is_some() {
                color += 1;
                avail.copy_from_slice(&unc);
                let mut from = unc_from;
                while let Some(v) = bits::first_set_from(&avail, &mut from) {
                    bits::clear(&mut avail, v);
                    bits::clear(&mut unc, v);
                    bits::and_not(&mut avail, &self.rows[v]);
                    order.push((v as u32, color));
                }
            }
            self.unc[depth] = unc;
            self.avail[depth] = avail;
        }

        let base = self.cur.len() as u32;
        for i in (0..order.len()).rev() {
            let (v, color) = order[i];
            if base + color <= self.best {
                break; // colors ascend, so everything earlier is bounded too
            }
            self.cur.push(v);
            if base + 1 > self.best {
                self.best = base + 1;
                self.best_set.clone_from(&self.cur);
                self.improved = true;
                if self.target.is_some_and(|t| self.best >= t) {
                    self.stop = true;
                }
            }
            if !self.stop {
                let (head, tail) = self.cands.split_at_mut(depth + 1);
                bits::intersect_into(&mut tail[0], &head[depth], &self.rows[v as usize]);
                if !bits::is_empty(&tail[0]) {
                    self.expand(depth + 1);
                }
            }
            self.cur.pop();
            bits::clear(&mut self.cands[depth], v as usize);
            if self.stop || self.exhausted {
                return;
            }
        }
    }
}

/// Branching order: ids sorted by degree descending, ties by id.
fn branch_order(rows: &[Words]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..rows.len() as u32).collect();
    let deg: Vec<usize> = rows.iter().map(|r| bits::count(r)).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v as usize]), v));
    order
}

/// Relabels `rows` so that internal id `i` is `order[i]`.
fn permute_rows(rows: &[Words], order: &[u32], n: usize) -> Vec<Words> {
    let mut inv = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        inv[v as usize] = i as u32;
    }
    order
        .iter()
        .map(|&v| {
            let mut dst = bits::zeroed(n);
            for b in bits::iter(&rows[v as usize]) {
                bits::set(&mut dst, inv[b] as usize);
            }
            dst
        })
        .collect()
}

struct CoreOutcome {
    value: u32,
    set: Vec<u32>, // original ids, sorted
    reached_target: bool,
    completed: bool,
    nodes: u64,
}

/// Runs the clique core over arbitrary adjacency rows (original id
/// space). Rows must be symmetric and self-loop-free.
fn solve_rows(rows: &[Words], n: usize, budget: u64, target: Option<u32>) -> CoreOutcome {
    let order = branch_order(rows);
    let internal = permute_rows(rows, &order, n);
    let mut search = Search::new(internal, n, budget, target);
    let mut full = bits::zeroed(n);
    for i in 0..n {
        bits::set(&mut full, i);
    }
    search.run(full);
    let mut set: Vec<u32> = search
        .best_set
        .iter()
        .map(|&i| order[i as usize])
        .collect();
    set.sort_unstable();
    let value = if search.improved { search.best } else { 0 };
    if !search.improved {
        set.clear();
    }
    CoreOutcome {
        value,
        set,
        reached_target: search.stop,
        completed: !search.exhausted,
        nodes: search.nodes,
    }
}

fn complement_rows(g: &Graph) -> Vec<Words> {
    let n = g.n();
    (0..n)
        .map(|v| {
            let mut row = Words::from_slice(g.adj_row(v as u32));
            for w in row.iter_mut() {
                *w = !*w;
            }
            mask_tail(&mut row, n);
            bits::clear(&mut row, v);
            row
        })
        .collect()
}

fn mask_tail(row: &mut [u64], n: usize) {
    let full_words = n >> 6;
    if n & 63 != 0 {
        row[full_words] &= (1u64 << (n & 63)) - 1;
        for w in row.iter_mut().skip(full_words + 1) {
            *w = 0;
        }
    } else {
        for w in row.iter_mut().skip(full_words) {
            *w = 0;
        }
    }
}

/// Conflict rows over edge indices: bit `f` of row `e` is set when edges
/// `e` and `f` share an endpoint or some graph edge joins an endpoint of
/// `e` to an endpoint of `f`. Row `e` includes bit `e` itself.
fn conflict_rows(g: &Graph) -> Vec<Words> {
    let m = g.m();
    let mut incident = vec![bits::zeroed(m); g.n()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        bits::set(&mut incident[u as usize], i);
        bits::set(&mut incident[v as usize], i);
    }
    // edges with an endpoint in the closed neighborhood of v
    let reach: Vec<Words> = (0..g.n() as u32)
        .map(|v| {
            let mut row = incident[v as usize].clone();
            for u in g.neighbors(v) {
                for (d, s) in row.iter_mut().zip(incident[u as usize].iter()) {
                    *d |= *s;
                }
            }
            row
        })
        .collect();
    g.edges()
        .iter()
        .map(|&(a, b)| {
            let mut row = reach[a as usize].clone();
            for (d, s) in row.iter_mut().zip(reach[b as usize].iter()) {
                *d |= *s;
            }
            row
        })
        .collect()
}

/// Compatibility rows: the complement of [`conflict_rows`], i.e. cliques
/// here are induced matchings of `g`.
fn compatibility_rows(g: &Graph) -> Vec<Words> {
    let m = g.m();
    conflict_rows(g)
        .into_iter()
        .enumerate()
        .map(|(e, mut row)| {
            for w in row.iter_mut() {
                *w = !*w;
            }
            mask_tail(&mut row, m);
            bits::clear(&mut row, e);
            row
        })
        .collect()
}

/// The conflict graph of `g`'s edges, materialized, plus the map from its
/// vertex ids back to `g`'s edges. Quadratic in the edge count; meant for
/// cross-checks on small graphs, the solvers never materialize it.
pub fn conflict_graph(g: &Graph) -> (Graph, Vec<(u32, u32)>) {
    let rows = conflict_rows(g);
    let m = g.m();
    let mut b = GraphBuilder::new(m);
    for (e, row) in rows.iter().enumerate() {
        for f in bits::iter(row) {
            if f > e {
                b.add_edge(e as u32, f as u32);
            }
        }
    }
    (b.build(), g.edges().to_vec())
}

/// Maximum clique by branch and bound with a greedy-coloring bound.
pub fn max_clique(g: &Graph, budget: u64) -> SolveResult<VertexSet> {
    let start = Instant::now();
    let rows: Vec<Words> = (0..g.n() as u32).map(|v| Words::from_slice(g.adj_row(v))).collect();
    let out = solve_rows(&rows, g.n(), budget, None);
    let witness = VertexSet::new(out.set);
    debug_assert!(g.is_clique(&witness));
    SolveResult {
        value: out.value,
        witness,
        status: if out.completed { Status::Optimal } else { Status::BudgetExhausted },
        nodes: out.nodes,
        elapsed: start.elapsed(),
    }
}

/// Maximum independent set: maximum clique on the complement.
pub fn max_independent_set(g: &Graph, budget: u64) -> SolveResult<VertexSet> {
    let start = Instant::now();
    let out = solve_rows(&complement_rows(g), g.n(), budget, None);
    let witness = VertexSet::new(out.set);
    debug_assert!(g.is_independent_set(&witness));
    SolveResult {
        value: out.value,
        witness,
        status: if out.completed { Status::Optimal } else { Status::BudgetExhausted },
        nodes: out.nodes,
        elapsed: start.elapsed(),
    }
}

fn edge_witness(g: &Graph, edge_ids: &[u32]) -> EdgeSet {
    edge_ids.iter().map(|&i| g.edges()[i as usize]).collect()
}

/// Maximum induced matching: maximum independent set on the conflict
/// graph of the edges.
pub fn max_induced_matching(g: &Graph, budget: u64) -> SolveResult<EdgeSet> {
    let start = Instant::now();
    let out = solve_rows(&compatibility_rows(g), g.m(), budget, None);
    let witness = edge_witness(g, &out.set);
    debug_assert!(g.is_induced_matching(&witness));
    SolveResult {
        value: out.value,
        witness,
        status: if out.completed { Status::Optimal } else { Status::BudgetExhausted },
        nodes: out.nodes,
        elapsed: start.elapsed(),
    }
}

/// Decision variant: does `g` contain a clique of at least `target`
/// vertices? Stops at the first witness or at a proven bound below the
/// target; `Unknown` only on budget exhaustion.
pub fn has_clique(g: &Graph, target: u32, budget: u64) -> Decision<VertexSet> {
    let start = Instant::now();
    if target == 0 {
        return Decision {
            verdict: Verdict::Yes(VertexSet::new(Vec::new())),
            nodes: 0,
            elapsed: start.elapsed(),
        };
    }
    let rows: Vec<Words> = (0..g.n() as u32).map(|v| Words::from_slice(g.adj_row(v))).collect();
    let out = solve_rows(&rows, g.n(), budget, Some(target));
    let verdict = if out.reached_target {
        let w = VertexSet::new(out.set);
        debug_assert!(g.is_clique(&w) && w.len() as u32 >= target);
        Verdict::Yes(w)
    } else if out.completed {
        Verdict::No
    } else {
        Verdict::Unknown
    };
    Decision {
        verdict,
        nodes: out.nodes,
        elapsed: start.elapsed(),
    }
}

/// Decision variant: does `g` contain an induced matching of at least
/// `target` edges?
pub fn has_induced_matching(g: &Graph, target: u32, budget: u64) -> Decision<EdgeSet> {
    let start = Instant::now();
    if target == 0 {
        return Decision {
            verdict: Verdict::Yes(EdgeSet::new(Vec::new())),
            nodes: 0,
            elapsed: start.elapsed(),
        };
    }
    let out = solve_rows(&compatibility_rows(g), g.m(), budget, Some(target));
    let verdict = if out.reached_target {
        let w = edge_witness(g, &out.set);
        debug_assert!(g.is_induced_matching(&w) && w.len() as u32 >= target);
        Verdict::Yes(w)
    } else if out.completed {
        Verdict::No
    } else {
        Verdict::Unknown
    };
    Decision {
        verdict,
        nodes: out.nodes,
        elapsed: start.elapsed(),
    }
}
