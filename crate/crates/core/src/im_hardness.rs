//! The central reduction: from deciding whether a graph contains a clique
//! of odd size `l = 2k+1` to deciding whether a purpose-built Hamiltonian
//! bipartite graph contains an induced matching of size `6k(2k+1)`.
//!
//! The output graph is assembled from *gadgets* (one per integer pair
//! `(k1,k2)` with `1 <= k1 < k2 <= l`, selecting one source edge each) and
//! *connectors* (one per consecutive gadget pair along a fixed cycle
//! through the gadgets, tying the two gadgets' shared-integer units to a
//! common source vertex). Both are built from complete bipartite *units*
//! carrying one representative vertex per side per source edge (gadgets)
//! or per source vertex (connectors). Connectors for the same integer are
//! cross-wired into a *connector group* so the whole group selects one
//! source vertex.
//!
//! Selection semantics of the boundary wiring: within the unit for the
//! smaller integer of a gadget's pair, a representative of edge `(x,y)`
//! (with `x < y`) stands for the choice of `x`; within the unit for the
//! larger integer it stands for `y`. A unit vertex is joined to exactly
//! the attached connector's opposite-side vertices that represent some
//! *other* source vertex, so in a full-size induced matching each
//! connector group's selected vertex must equal the designated endpoint
//! of every adjacent gadget's selected edge. That pins the selected edges
//! to `(a_{k1}, a_{k2})` for distinct vertices `a_1 < a_2 < ... < a_l`
//! and makes the extraction sound.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{CycleWitness, EdgeSet, Graph, GraphBuilder, Side, VertexSet};
use crate::paths::{ham_path_avoiding, line_graph_ham_cycle};

/// Cycle through all integer pairs of `1..=l` in which consecutive pairs
/// (cyclically) share exactly one integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetCycle {
    /// Integer pairs `(k1,k2)`, `k1 < k2`, in cycle order.
    pub pairs: Vec<(u32, u32)>,
    /// `shared[i]` is the integer common to `pairs[i]` and the cyclically
    /// next pair.
    pub shared: Vec<u32>,
}

/// Builds the gadget cycle for odd `l >= 3` from a Hamiltonian cycle of
/// the line graph of the complete graph on `l` vertices.
pub fn build_gadget_cycle(l: u32) -> Result<GadgetCycle, Error> {
    let (lg, cycle) = line_graph_ham_cycle(l as usize)?;
    let pairs: Vec<(u32, u32)> = cycle
        .as_slice()
        .iter()
        .map(|&v| {
            let (a, b) = lg.source_edges[v as usize];
            (a + 1, b + 1)
        })
        .collect();
    let shared = pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            shared_integer(p, pairs[(i + 1) % pairs.len()])
                .expect("consecutive cycle pairs share an integer")
        })
        .collect();
    Ok(GadgetCycle { pairs, shared })
}

fn shared_integer(p: (u32, u32), q: (u32, u32)) -> Option<u32> {
    if p.0 == q.0 || p.0 == q.1 {
        Some(p.0)
    } else if p.1 == q.0 || p.1 == q.1 {
        Some(p.1)
    } else {
        None
    }
}

/// Which of a gadget's three units a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetUnitRole {
    /// Selects the source vertex for the smaller integer of the pair.
    ForFirst,
    /// Selects the source vertex for the larger integer.
    ForSecond,
    /// Forces the other two units to select the same edge.
    Auxiliary,
}

/// Semantic position of an output vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitRole {
    Gadget {
        pair: (u32, u32),
        role: GadgetUnitRole,
    },
    Connector {
        connector: u32,
        for_integer: u32,
        unit: u8,
    },
}

/// What an output vertex represents in the source graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Represents {
    Edge((u32, u32)),
    Vertex(u32),
}

/// Per-vertex provenance record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexInfo {
    pub unit: UnitRole,
    pub side: Side,
    pub represents: Represents,
}

#[derive(Clone, Copy, Debug)]
enum Region {
    Gadget(usize),
    Connector(usize),
}

/// Fixed id arithmetic of the output graph.
///
/// Gadgets come first in lexicographic pair order, each occupying
/// `6|E|` ids (three units, `|E|` per side, `S1` block then `S2` block);
/// connectors follow in cycle order, each occupying `6|V|` ids likewise.
#[derive(Clone, Debug)]
struct Layout {
    m: usize,
    nv: usize,
    groups: usize, // k*l = number of gadgets = number of connectors
}

impl Layout {
    fn gadget_span(&self) -> usize {
        6 * self.m
    }

    fn connector_span(&self) -> usize {
        6 * self.nv
    }

    fn connector_base(&self) -> usize {
        self.groups * self.gadget_span()
    }

    fn total(&self) -> usize {
        self.groups * (self.gadget_span() + self.connector_span())
    }

    fn gadget_vertex(&self, gi: usize, unit: usize, side: Side, rep: usize) -> u32 {
        debug_assert!(unit < 3 && rep < self.m);
        let side_off = match side {
            Side::S1 => 0,
            Side::S2 => self.m,
        };
        (gi * self.gadget_span() + unit * 2 * self.m + side_off + rep) as u32
    }

    fn connector_vertex(&self, ci: usize, unit: usize, side: Side, rep: usize) -> u32 {
        debug_assert!(unit < 3 && rep < self.nv);
        let side_off = match side {
            Side::S1 => 0,
            Side::S2 => self.nv,
        };
        (self.connector_base() + ci * self.connector_span() + unit * 2 * self.nv + side_off + rep)
            as u32
    }

    fn region(&self, v: u32) -> Region {
        let v = v as usize;
        if v < self.connector_base() {
            Region::Gadget(v / self.gadget_span())
        } else {
            Region::Connector((v - self.connector_base()) / self.connector_span())
        }
    }

    /// `(unit, side, rep)` within the vertex's own region.
    fn decompose(&self, v: u32) -> (usize, Side, usize) {
        let v = v as usize;
        let (off, per_side) = if v < self.connector_base() {
            (v % self.gadget_span(), self.m)
        } else {
            ((v - self.connector_base()) % self.connector_span(), self.nv)
        };
        let unit = off / (2 * per_side);
        let within = off % (2 * per_side);
        if within < per_side {
            (unit, Side::S1, within)
        } else {
            (unit, Side::S2, within - per_side)
        }
    }
}

/// Provenance of one reduction output: the per-vertex table plus the id
/// arithmetic backing it.
#[derive(Clone, Debug)]
pub struct ImProvenance {
    layout: Layout,
    pairs: Vec<(u32, u32)>, // gadget index -> integer pair, lex order
    info: Vec<VertexInfo>,
}

impl ImProvenance {
    pub fn info(&self, v: u32) -> &VertexInfo {
        &self.info[v as usize]
    }

    pub fn table(&self) -> &[VertexInfo] {
        &self.info
    }

    /// Gadget index of `v`, if it lies in a gadget.
    pub fn gadget_of(&self, v: u32) -> Option<usize> {
        match self.layout.region(v) {
            Region::Gadget(g) => Some(g),
            Region::Connector(_) => None,
        }
    }

    /// Connector index (cycle position) of `v`, if it lies in a connector.
    pub fn connector_of(&self, v: u32) -> Option<usize> {
        match self.layout.region(v) {
            Region::Gadget(_) => None,
            Region::Connector(c) => Some(c),
        }
    }

    pub fn pair_of_gadget(&self, gi: usize) -> (u32, u32) {
        self.pairs[gi]
    }
}

/// One connector: the two gadgets it joins (as gadget indices) and the
/// integer whose group it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorInfo {
    pub gadget_a: u32,
    pub gadget_b: u32,
    pub for_integer: u32,
}

/// Complete output of [`build`].
#[derive(Clone, Debug)]
pub struct ImReduction {
    pub source: Graph,
    pub graph: Graph,
    pub provenance: ImProvenance,
    pub ham_cycle: CycleWitness,
    pub gadget_cycle: GadgetCycle,
    pub connectors: Vec<ConnectorInfo>,
    pub k: u32,
    pub l: u32,
    pub target: u32,
}

/// Builds the reduction output for a source graph with at least 7
/// vertices and 3 edges and a parameter `k >= 1`.
pub fn build(g: &Graph, k: u32) -> Result<ImReduction, Error> {
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    if g.n() < 7 {
        return Err(Error::Precondition(format!(
            "source graph needs at least 7 vertices, got {}",
            g.n()
        )));
    }
    if g.m() < 3 {
        return Err(Error::Precondition(format!(
            "source graph needs at least 3 edges, got {}",
            g.m()
        )));
    }
    let l = 2 * k + 1;
    let cycle = build_gadget_cycle(l)?;
    let layout = Layout {
        m: g.m(),
        nv: g.n(),
        groups: (k * l) as usize,
    };

    // gadget order is lexicographic on the integer pair
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(layout.groups);
    for k1 in 1..=l {
        for k2 in k1 + 1..=l {
            pairs.push((k1, k2));
        }
    }
    let pair_index = |p: (u32, u32)| -> usize {
        pairs.binary_search(&p).expect("cycle pair is a valid gadget pair")
    };
    // unit 0 selects for the smaller integer, unit 1 for the larger
    let unit_for = |pair: (u32, u32), t: u32| -> usize {
        if t == pair.0 {
            0
        } else {
            debug_assert_eq!(t, pair.1);
            1
        }
    };
    // the source vertex a unit-`t` representative of edge `e` stands for
    let selected = |e: (u32, u32), unit: usize| -> u32 {
        if unit == 0 {
            e.0
        } else {
            e.1
        }
    };

    let mut b = GraphBuilder::new(layout.total());

    // (1) gadgets: three complete bipartite units plus cross-unit edges
    // between representatives of different edges
    for gi in 0..layout.groups {
        for u1 in 0..3 {
            for e1 in 0..layout.m {
                let s1 = layout.gadget_vertex(gi, u1, Side::S1, e1);
                for u2 in 0..3 {
                    for e2 in 0..layout.m {
                        if u1 == u2 || e1 != e2 {
                            b.add_edge(s1, layout.gadget_vertex(gi, u2, Side::S2, e2));
                        }
                    }
                }
            }
        }
    }

    // (2) connectors: same shape over vertex representatives
    for ci in 0..layout.groups {
        for u1 in 0..3 {
            for w1 in 0..layout.nv {
                let s1 = layout.connector_vertex(ci, u1, Side::S1, w1);
                for u2 in 0..3 {
                    for w2 in 0..layout.nv {
                        if u1 == u2 || w1 != w2 {
                            b.add_edge(s1, layout.connector_vertex(ci, u2, Side::S2, w2));
                        }
                    }
                }
            }
        }
    }

    // (3) boundary edges: connector `i` attaches the shared-integer units
    // of the two gadgets at cycle positions `i` and `i+1`; a gadget
    // representative is joined to every opposite-side connector vertex
    // that represents a source vertex other than its designated endpoint
    let positions = cycle.pairs.len();
    let mut connectors = Vec::with_capacity(positions);
    for ci in 0..positions {
        let t = cycle.shared[ci];
        let ga = pair_index(cycle.pairs[ci]);
        let gb = pair_index(cycle.pairs[(ci + 1) % positions]);
        connectors.push(ConnectorInfo {
            gadget_a: ga as u32,
            gadget_b: gb as u32,
            for_integer: t,
        });
        for &gi in &[ga, gb] {
            let unit = unit_for(pairs[gi], t);
            for (e_idx, &e) in g.edges().iter().enumerate() {
                let sel = selected(e, unit);
                let gs1 = layout.gadget_vertex(gi, unit, Side::S1, e_idx);
                let gs2 = layout.gadget_vertex(gi, unit, Side::S2, e_idx);
                for cu in 0..3 {
                    for w in 0..layout.nv as u32 {
                        if w != sel {
                            b.add_edge(gs1, layout.connector_vertex(ci, cu, Side::S2, w as usize));
                            b.add_edge(gs2, layout.connector_vertex(ci, cu, Side::S1, w as usize));
                        }
                    }
                }
            }
        }
    }

    // (4) connector groups: connectors for the same integer are joined
    // across, again between representatives of different source vertices
    for t in 1..=l {
        let members: Vec<usize> = (0..positions).filter(|&i| cycle.shared[i] == t).collect();
        for (ai, &ca) in members.iter().enumerate() {
            for &cb in &members[ai + 1..] {
                for ua in 0..3 {
                    for ub in 0..3 {
                        for wa in 0..layout.nv {
                            for wb in 0..layout.nv {
                                if wa != wb {
                                    b.add_edge(
                                        layout.connector_vertex(ca, ua, Side::S1, wa),
                                        layout.connector_vertex(cb, ub, Side::S2, wb),
                                    );
                                    b.add_edge(
                                        layout.connector_vertex(cb, ub, Side::S1, wb),
                                        layout.connector_vertex(ca, ua, Side::S2, wa),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // provenance table and side labels
    let mut info = Vec::with_capacity(layout.total());
    let mut sides = Vec::with_capacity(layout.total());
    for v in 0..layout.total() as u32 {
        let (unit, side, rep) = layout.decompose(v);
        let record = match layout.region(v) {
            Region::Gadget(gi) => VertexInfo {
                unit: UnitRole::Gadget {
                    pair: pairs[gi],
                    role: match unit {
                        0 => GadgetUnitRole::ForFirst,
                        1 => GadgetUnitRole::ForSecond,
                        _ => GadgetUnitRole::Auxiliary,
                    },
                },
                side,
                represents: Represents::Edge(g.edges()[rep]),
            },
            Region::Connector(ci) => VertexInfo {
                unit: UnitRole::Connector {
                    connector: ci as u32,
                    for_integer: cycle.shared[ci],
                    unit: unit as u8,
                },
                side,
                represents: Represents::Vertex(rep as u32),
            },
        };
        sides.push(side);
        info.push(record);
    }
    b.set_sides(sides);
    let graph = b.build();

    // (5) Hamiltonian cycle: a path through each gadget stitched to a
    // path through each connector, in cycle order. The gadget path enters
    // in the unit shared with the previous gadget (side S1) and leaves in
    // the unit shared with the next one (side S2); endpoints are the
    // lowest-id eligible vertices.
    let adjacent = |a: u32, b: u32| graph.has_edge(a, b);
    let gadget_sides = |gi: usize| -> (Vec<u32>, Vec<u32>) {
        let mut left = Vec::with_capacity(3 * layout.m);
        let mut right = Vec::with_capacity(3 * layout.m);
        for unit in 0..3 {
            for rep in 0..layout.m {
                left.push(layout.gadget_vertex(gi, unit, Side::S1, rep));
                right.push(layout.gadget_vertex(gi, unit, Side::S2, rep));
            }
        }
        (left, right)
    };
    let connector_sides = |ci: usize| -> (Vec<u32>, Vec<u32>) {
        let mut left = Vec::with_capacity(3 * layout.nv);
        let mut right = Vec::with_capacity(3 * layout.nv);
        for unit in 0..3 {
            for rep in 0..layout.nv {
                left.push(layout.connector_vertex(ci, unit, Side::S1, rep));
                right.push(layout.connector_vertex(ci, unit, Side::S2, rep));
            }
        }
        (left, right)
    };

    let entry_exit: Vec<(u32, u32)> = (0..positions)
        .map(|i| {
            let gi = pair_index(cycle.pairs[i]);
            let t_in = cycle.shared[(i + positions - 1) % positions];
            let t_out = cycle.shared[i];
            let s = layout.gadget_vertex(gi, unit_for(pairs[gi], t_in), Side::S1, 0);
            let e = layout.gadget_vertex(gi, unit_for(pairs[gi], t_out), Side::S2, 0);
            (s, e)
        })
        .collect();

    let mut sequence: Vec<u32> = Vec::with_capacity(layout.total());
    for i in 0..positions {
        let gi = pair_index(cycle.pairs[i]);
        let (s_i, e_i) = entry_exit[i];
        let (left, right) = gadget_sides(gi);
        let p = ham_path_avoiding(&left, &right, s_i, e_i, &adjacent)?;
        sequence.extend_from_slice(&p);

        let s_next = entry_exit[(i + 1) % positions].0;
        let (cleft, cright) = connector_sides(i);
        let c_start = cleft
            .iter()
            .copied()
            .find(|&v| adjacent(e_i, v))
            .expect("exit vertex has an eligible connector neighbor");
        let c_end = cright
            .iter()
            .copied()
            .find(|&v| adjacent(v, s_next))
            .expect("entry vertex has an eligible connector neighbor");
        let q = ham_path_avoiding(&cleft, &cright, c_start, c_end, &adjacent)?;
        sequence.extend_from_slice(&q);
    }
    let ham_cycle = CycleWitness::new(sequence);
    assert!(
        graph.validate_cycle(&ham_cycle),
        "assembled hamiltonian cycle failed validation"
    );

    Ok(ImReduction {
        source: g.clone(),
        graph,
        provenance: ImProvenance {
            layout,
            pairs,
            info,
        },
        ham_cycle,
        gadget_cycle: cycle,
        connectors,
        k,
        l,
        target: 6 * k * l,
    })
}

/// Maps a clique of size `2k+1` in the source to an induced matching of
/// size `6k(2k+1)` in the output: clique vertices are assigned to the
/// integers `1..=l` in ascending id order; each gadget contributes the
/// three within-unit edges representing its pair's edge, each connector
/// the three within-unit edges representing its integer's vertex.
pub fn lift_clique_to_matching(out: &ImReduction, c: &VertexSet) -> Result<EdgeSet, Error> {
    if c.len() as u32 != out.l {
        return Err(Error::Precondition(format!(
            "expected a clique of size {}, got {}",
            out.l,
            c.len()
        )));
    }
    if !out.source.is_clique(c) {
        return Err(Error::precondition("witness is not a clique in the source graph"));
    }
    let assigned = c.as_slice(); // ascending: assigned[t-1] is the vertex for t
    let lay = &out.provenance.layout;
    let mut picked = Vec::with_capacity(out.target as usize);
    for (gi, &(k1, k2)) in out.provenance.pairs.iter().enumerate() {
        let e = (assigned[(k1 - 1) as usize], assigned[(k2 - 1) as usize]);
        let e_idx = out
            .source
            .edges()
            .binary_search(&e)
            .expect("clique pair is a source edge");
        for unit in 0..3 {
            picked.push((
                lay.gadget_vertex(gi, unit, Side::S1, e_idx),
                lay.gadget_vertex(gi, unit, Side::S2, e_idx),
            ));
        }
    }
    for (ci, conn) in out.connectors.iter().enumerate() {
        let w = assigned[(conn.for_integer - 1) as usize] as usize;
        for unit in 0..3 {
            picked.push((
                lay.connector_vertex(ci, unit, Side::S1, w),
                lay.connector_vertex(ci, unit, Side::S2, w),
            ));
        }
    }
    let m = EdgeSet::new(picked);
    debug_assert_eq!(m.len() as u32, out.target);
    debug_assert!(out.graph.is_induced_matching(&m));
    Ok(m)
}

/// Recovers the clique from a full-size induced matching, asserting the
/// structural facts the construction guarantees as it reads: no boundary
/// edges, exactly three within-unit same-edge edges per gadget, exactly
/// `3k` within-unit same-vertex edges per connector group, and gadget
/// edges matching the group selections. Any violation is reported as a
/// soundness error rather than papered over.
pub fn extract_clique_from_matching(out: &ImReduction, m: &EdgeSet) -> Result<VertexSet, Error> {
    if m.len() as u32 != out.target {
        return Err(Error::Precondition(format!(
            "expected a matching of size {}, got {}",
            out.target,
            m.len()
        )));
    }
    if !out.graph.is_induced_matching(m) {
        return Err(Error::precondition(
            "witness is not an induced matching in the output graph",
        ));
    }
    let lay = &out.provenance.layout;
    let group_of = |ci: usize| out.connectors[ci].for_integer;

    let mut gadget_edges: Vec<Vec<(u32, u32)>> = vec![Vec::new(); lay.groups];
    let mut group_edges: Vec<Vec<(u32, u32)>> = vec![Vec::new(); out.l as usize];
    for (x, y) in m.iter() {
        match (lay.region(x), lay.region(y)) {
            (Region::Gadget(a), Region::Gadget(b)) if a == b => gadget_edges[a].push((x, y)),
            (Region::Connector(a), Region::Connector(b)) if group_of(a) == group_of(b) => {
                group_edges[(group_of(a) - 1) as usize].push((x, y))
            }
            _ => {
                return Err(Error::Soundness(format!(
                    "full-size matching contains a boundary edge ({x},{y})"
                )))
            }
        }
    }

    let mut selected_edge = vec![0usize; lay.groups];
    for (gi, edges) in gadget_edges.iter().enumerate() {
        if edges.len() != 3 {
            return Err(Error::Soundness(format!(
                "gadget {gi} holds {} matching edges instead of 3",
                edges.len()
            )));
        }
        let mut rep = None;
        for &(x, y) in edges {
            let (ux, _, rx) = lay.decompose(x);
            let (uy, _, ry) = lay.decompose(y);
            if ux != uy {
                return Err(Error::Soundness(format!(
                    "gadget {gi} matching edge ({x},{y}) crosses units"
                )));
            }
            if rx != ry {
                return Err(Error::Soundness(format!(
                    "gadget {gi} matching edge ({x},{y}) joins representatives of two edges"
                )));
            }
            if *rep.get_or_insert(rx) != rx {
                return Err(Error::Soundness(format!(
                    "gadget {gi} units selected different edges"
                )));
            }
        }
        selected_edge[gi] = rep.unwrap();
    }

    let mut assigned = vec![0u32; out.l as usize];
    for (ti, edges) in group_edges.iter().enumerate() {
        if edges.len() as u32 != 3 * out.k {
            return Err(Error::Soundness(format!(
                "connector group {} holds {} matching edges instead of {}",
                ti + 1,
                edges.len(),
                3 * out.k
            )));
        }
        let mut rep = None;
        for &(x, y) in edges {
            let (cx, cy) = (lay.region(x), lay.region(y));
            let same_connector = matches!((cx, cy), (Region::Connector(a), Region::Connector(b)) if a == b);
            let (ux, _, rx) = lay.decompose(x);
            let (uy, _, ry) = lay.decompose(y);
            if !same_connector || ux != uy {
                return Err(Error::Soundness(format!(
                    "connector group {} matching edge ({x},{y}) is not within one unit",
                    ti + 1
                )));
            }
            if rx != ry || *rep.get_or_insert(rx) != rx {
                return Err(Error::Soundness(format!(
                    "connector group {} selected more than one vertex",
                    ti + 1
                )));
            }
        }
        assigned[ti] = rep.unwrap() as u32;
    }

    // the selected gadget edges must be exactly the pairs of group picks
    for (gi, &(k1, k2)) in out.provenance.pairs.iter().enumerate() {
        let e = out.source.edges()[selected_edge[gi]];
        let want = (assigned[(k1 - 1) as usize], assigned[(k2 - 1) as usize]);
        if e != want {
            return Err(Error::Soundness(format!(
                "gadget ({k1},{k2}) selected edge {e:?} but the groups selected {want:?}"
            )));
        }
    }

    let clique: VertexSet = assigned.iter().copied().collect();
    if clique.len() as u32 != out.l {
        return Err(Error::Soundness(
            "connector groups selected duplicate vertices".into(),
        ));
    }
    if !out.source.is_clique(&clique) {
        return Err(Error::Soundness(
            "extracted vertex set is not a clique in the source graph".into(),
        ));
    }
    Ok(clique)
}

/// Health of one gadget with respect to a matching's boundary edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetStatus {
    Good,
    BadInOneSide,
    CompletelyBad,
}

/// Region-by-region classification of a matching on the output graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingCensus {
    /// Inner matching edges per gadget.
    pub gadget_edges: Vec<u32>,
    /// Inner matching edges per connector group, indexed by `t-1`.
    pub group_edges: Vec<u32>,
    /// Matching edges with one endpoint in a gadget and one in a connector.
    pub boundary_edges: u32,
    pub gadget_status: Vec<GadgetStatus>,
    /// Boundary matching edges attached to each group.
    pub group_boundary_attached: Vec<u32>,
    /// Units of each group holding two boundary endpoints.
    pub group_full_units: Vec<u32>,
    /// Inner group edges with an endpoint in a unit that holds exactly
    /// one boundary endpoint and no second matched vertex.
    pub group_dangling: Vec<u32>,
}

impl MatchingCensus {
    pub fn all_gadgets_good(&self) -> bool {
        self.gadget_status.iter().all(|s| *s == GadgetStatus::Good)
    }
}

/// Classifies every matching edge as inner to a gadget, inner to a
/// connector group, or boundary, and derives the per-region statistics
/// the counting argument of the reduction is phrased in. Assumes `m` is
/// an induced matching of `out.graph`.
pub fn matching_census(out: &ImReduction, m: &EdgeSet) -> MatchingCensus {
    let lay = &out.provenance.layout;
    let groups = out.l as usize;
    let group_of = |ci: usize| (out.connectors[ci].for_integer - 1) as usize;

    let mut gadget_edges = vec![0u32; lay.groups];
    let mut group_edges = vec![0u32; groups];
    let mut boundary_edges = 0u32;
    let mut bad_first = vec![false; lay.groups];
    let mut bad_second = vec![false; lay.groups];
    let mut group_boundary_attached = vec![0u32; groups];
    // per connector unit: matched-vertex count and boundary-endpoint count
    let mut unit_matched = vec![[0u32; 3]; lay.groups];
    let mut unit_boundary = vec![[0u32; 3]; lay.groups];
    let mut inner_group_edges: Vec<(usize, usize, usize)> = Vec::new(); // (group, conn, unit) per endpoint

    for (x, y) in m.iter() {
        match (lay.region(x), lay.region(y)) {
            (Region::Gadget(a), Region::Gadget(b)) if a == b => gadget_edges[a] += 1,
            (Region::Connector(a), Region::Connector(b)) if group_of(a) == group_of(b) => {
                group_edges[group_of(a)] += 1;
                let (ux, _, _) = lay.decompose(x);
                let (uy, _, _) = lay.decompose(y);
                unit_matched[a][ux] += 1;
                unit_matched[b][uy] += 1;
                inner_group_edges.push((group_of(a), a, ux));
                inner_group_edges.push((group_of(b), b, uy));
            }
            (ra, rb) => {
                boundary_edges += 1;
                for (v, r) in [(x, ra), (y, rb)] {
                    match r {
                        Region::Gadget(gi) => {
                            let (unit, _, _) = lay.decompose(v);
                            match unit {
                                0 => bad_first[gi] = true,
                                1 => bad_second[gi] = true,
                                _ => {}
                            }
                        }
                        Region::Connector(ci) => {
                            let (unit, _, _) = lay.decompose(v);
                            group_boundary_attached[group_of(ci)] += 1;
                            unit_matched[ci][unit] += 1;
                            unit_boundary[ci][unit] += 1;
                        }
                    }
                }
            }
        }
    }

    let gadget_status = (0..lay.groups)
        .map(|gi| match (bad_first[gi], bad_second[gi]) {
            (false, false) => GadgetStatus::Good,
            (true, true) => GadgetStatus::CompletelyBad,
            _ => GadgetStatus::BadInOneSide,
        })
        .collect();

    let mut group_full_units = vec![0u32; groups];
    for ci in 0..lay.groups {
        for u in 0..3 {
            if unit_boundary[ci][u] >= 2 {
                group_full_units[group_of(ci)] += 1;
            }
        }
    }
    // occupied: exactly one boundary endpoint and nothing else in the unit
    let occupied = |ci: usize, u: usize| unit_boundary[ci][u] == 1 && unit_matched[ci][u] == 1;
    let mut group_dangling = vec![0u32; groups];
    let mut counted = std::collections::BTreeSet::new();
    for chunk in inner_group_edges.chunks(2) {
        let dangling = chunk.iter().any(|&(_, ci, u)| occupied(ci, u));
        if dangling && counted.insert(chunk.to_vec()) {
            group_dangling[chunk[0].0] += 1;
        }
    }

    MatchingCensus {
        gadget_edges,
        group_edges,
        boundary_edges,
        gadget_status,
        group_boundary_attached,
        group_full_units,
        group_dangling,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_cycle, gen_random, GraphBuilder};

    fn k7() -> Graph {
        gen_complete(7)
    }

    #[test]
    fn gadget_cycle_l3() {
        let c = build_gadget_cycle(3).unwrap();
        let mut sorted = c.pairs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![(1, 2), (1, 3), (2, 3)]);
        for i in 0..c.pairs.len() {
            let s = shared_integer(c.pairs[i], c.pairs[(i + 1) % c.pairs.len()]).unwrap();
            assert_eq!(s, c.shared[i]);
        }
    }

    #[test]
    fn gadget_cycle_l5_share_counts() {
        let c = build_gadget_cycle(5).unwrap();
        assert_eq!(c.pairs.len(), 10);
        for i in 0..10 {
            assert!(shared_integer(c.pairs[i], c.pairs[(i + 1) % 10]).is_some());
        }
        // every integer is the shared one exactly (l-1)/2 = k times
        for t in 1..=5u32 {
            assert_eq!(c.shared.iter().filter(|&&s| s == t).count(), 2);
        }
    }

    #[test]
    fn build_k7_structure() {
        let out = build(&k7(), 1).unwrap();
        assert_eq!(out.l, 3);
        assert_eq!(out.target, 18);
        assert_eq!(out.provenance.pairs.len(), 3);
        assert_eq!(out.connectors.len(), 3);
        assert_eq!(out.graph.n(), 6 * 3 * (7 + 21));
        assert_eq!(out.graph.n(), 504);
        assert!(out.graph.monochromatic_edge().is_none());
        assert!(out.graph.bipartition().is_some());
        assert!(out.graph.validate_cycle(&out.ham_cycle));
        // size bound: |V| = 6k(2k+1)(n+m) <= 18 k^2 n^2
        let (n, k) = (7u32, 1u32);
        assert!(out.graph.n() as u32 <= 18 * k * k * n * n);
    }

    #[test]
    fn build_rejects_small_sources() {
        assert!(matches!(build(&gen_complete(6), 1), Err(Error::Precondition(_))));
        let mut sparse = GraphBuilder::new(8);
        sparse.add_edge(0, 1);
        sparse.add_edge(2, 3);
        assert!(matches!(build(&sparse.build(), 1), Err(Error::Precondition(_))));
        assert!(matches!(build(&k7(), 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn unit_is_complete_bipartite_and_same_rep_cross_unit_is_forbidden() {
        let out = build(&k7(), 1).unwrap();
        let lay = &out.provenance.layout;
        for e1 in 0..lay.m {
            for e2 in 0..lay.m {
                // inside one unit every cross pair is an edge
                assert!(out.graph.has_edge(
                    lay.gadget_vertex(0, 0, Side::S1, e1),
                    lay.gadget_vertex(0, 0, Side::S2, e2)
                ));
            }
            // the same representative in different units is never adjacent
            assert!(!out.graph.has_edge(
                lay.gadget_vertex(0, 0, Side::S1, e1),
                lay.gadget_vertex(0, 1, Side::S2, e1)
            ));
            assert!(!out.graph.has_edge(
                lay.gadget_vertex(0, 2, Side::S1, e1),
                lay.gadget_vertex(0, 1, Side::S2, e1)
            ));
        }
        for w in 0..lay.nv {
            assert!(out.graph.has_edge(
                lay.connector_vertex(0, 0, Side::S1, w),
                lay.connector_vertex(0, 0, Side::S2, w)
            ));
            assert!(!out.graph.has_edge(
                lay.connector_vertex(0, 0, Side::S1, w),
                lay.connector_vertex(0, 1, Side::S2, w)
            ));
        }
    }

    #[test]
    fn lift_produces_a_full_induced_matching() {
        let out = build(&k7(), 1).unwrap();
        let c = VertexSet::new(vec![0, 1, 2]);
        let m = lift_clique_to_matching(&out, &c).unwrap();
        assert_eq!(m.len(), 18);
        assert!(out.graph.is_induced_matching(&m));
    }

    #[test]
    fn different_cliques_lift_to_different_matchings() {
        let out = build(&k7(), 1).unwrap();
        let m1 = lift_clique_to_matching(&out, &VertexSet::new(vec![0, 1, 2])).unwrap();
        let m2 = lift_clique_to_matching(&out, &VertexSet::new(vec![0, 1, 3])).unwrap();
        assert_ne!(m1, m2);
    }

    #[test]
    fn extract_inverts_lift() {
        let g = gen_random(8, 0.8, 21);
        if crate::brute::max_clique_exhaustive(&g) < 3 {
            panic!("seed no longer produces a triangle");
        }
        let out = build(&g, 1).unwrap();
        for c in [
            VertexSet::new(vec![0, 1, 2]),
            VertexSet::new(vec![0, 1, 3]),
        ] {
            if !g.is_clique(&c) {
                continue;
            }
            let m = lift_clique_to_matching(&out, &c).unwrap();
            let back = extract_clique_from_matching(&out, &m).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn extract_rejects_undersized_or_invalid_witnesses() {
        let out = build(&k7(), 1).unwrap();
        let small = EdgeSet::new(vec![]);
        assert!(matches!(
            extract_clique_from_matching(&out, &small),
            Err(Error::Precondition(_))
        ));
        // right size, not an induced matching: 18 copies is impossible, so
        // fabricate 18 pairwise-conflicting unit edges
        let lay = &out.provenance.layout;
        let junk: EdgeSet = (0..18)
            .map(|i| {
                (
                    lay.gadget_vertex(0, 0, Side::S1, i),
                    lay.gadget_vertex(0, 0, Side::S2, i),
                )
            })
            .collect();
        assert!(matches!(
            extract_clique_from_matching(&out, &junk),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn census_of_lifted_matching() {
        let out = build(&k7(), 1).unwrap();
        let m = lift_clique_to_matching(&out, &VertexSet::new(vec![2, 4, 6])).unwrap();
        let census = matching_census(&out, &m);
        assert!(census.gadget_edges.iter().all(|&c| c == 3));
        assert!(census.group_edges.iter().all(|&c| c == 3));
        assert_eq!(census.boundary_edges, 0);
        assert!(census.all_gadgets_good());
        assert!(census.group_dangling.iter().all(|&d| d == 0));
        assert!(census.group_full_units.iter().all(|&f| f == 0));
    }

    #[test]
    fn census_of_empty_matching() {
        let out = build(&k7(), 1).unwrap();
        let census = matching_census(&out, &EdgeSet::new(vec![]));
        assert!(census.gadget_edges.iter().all(|&c| c == 0));
        assert!(census.group_edges.iter().all(|&c| c == 0));
        assert_eq!(census.boundary_edges, 0);
        assert!(census.all_gadgets_good());
    }

    #[test]
    fn triangle_free_source_admits_no_full_matching_structurally() {
        // the lift of any claimed clique must fail before reaching the
        // output graph: a 7-cycle has no triangle
        let g = gen_cycle(7);
        let out = build(&g, 1).unwrap();
        assert!(lift_clique_to_matching(&out, &VertexSet::new(vec![0, 1, 2])).is_err());
        assert_eq!(out.graph.n(), 6 * 3 * (7 + 7));
    }

    #[test]
    fn k2_counts() {
        let out = build(&gen_cycle(7), 2).unwrap();
        assert_eq!(out.l, 5);
        assert_eq!(out.target, 60);
        assert_eq!(out.provenance.pairs.len(), 10);
        assert_eq!(out.connectors.len(), 10);
        assert_eq!(out.graph.n(), 6 * 10 * (7 + 7));
        assert!(out.graph.validate_cycle(&out.ham_cycle));
    }
}
