//! Seeded verification campaigns: every reduction's claimed optimum
//! relation and structural invariants, checked trial by trial against the
//! exact solvers, with deterministic replay of any single trial.
//!
//! All randomness derives from the campaign seed, so a report is a pure
//! function of its [`CampaignSpec`]. Trials are independent and run on a
//! worker pool; records are keyed by their trial seed and assembled in
//! trial order, so the report does not depend on scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::approx;
use crate::clique_gap;
use crate::dimacs::emit_graph;
use crate::error::Error;
use crate::graph::{gen_complete_bipartite, gen_cycle, gen_random, gen_random_bipartite, Graph,
    GraphBuilder, Side, VertexSet, Witness};
use crate::im_hardness;
use crate::solver::{self, Status, Verdict};
use crate::FORMAT_VERSION;

/// Which reduction a campaign exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    CliqueGap,
    ImHard,
    Image,
    HamClosure,
    Blowup,
    HambipClosure,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::CliqueGap => "clique-gap",
            ReductionKind::ImHard => "im-hard",
            ReductionKind::Image => "image",
            ReductionKind::HamClosure => "ham-closure",
            ReductionKind::Blowup => "blowup",
            ReductionKind::HambipClosure => "hambip-closure",
        }
    }
}

/// Full description of a campaign; a report is determined by this alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignSpec {
    pub kind: ReductionKind,
    pub trials: u32,
    pub seed: u64,
    /// Instance size range: vertex count, or side size for the bipartite
    /// closure. The clique hardness reduction always uses 7-vertex
    /// sources and ignores this range.
    pub n_min: u32,
    pub n_max: u32,
    pub edge_prob_min: f64,
    pub edge_prob_max: f64,
    pub k_min: u32,
    pub k_max: u32,
    pub budget: u64,
}

impl CampaignSpec {
    pub fn defaults_for(kind: ReductionKind) -> CampaignSpec {
        let base = CampaignSpec {
            kind,
            trials: 500,
            seed: 1,
            n_min: 1,
            n_max: 8,
            edge_prob_min: 0.1,
            edge_prob_max: 0.9,
            k_min: 1,
            k_max: 1,
            budget: 100_000_000,
        };
        match kind {
            ReductionKind::CliqueGap => CampaignSpec {
                n_max: 9,
                k_max: 3,
                ..base
            },
            ReductionKind::ImHard => CampaignSpec {
                trials: 20,
                n_min: 7,
                n_max: 7,
                edge_prob_min: 0.3,
                edge_prob_max: 0.7,
                budget: 1_000_000_000,
                ..base
            },
            ReductionKind::Image => base,
            ReductionKind::HamClosure => CampaignSpec { n_min: 2, ..base },
            ReductionKind::Blowup => CampaignSpec {
                trials: 20,
                n_min: 2,
                n_max: 3,
                edge_prob_min: 0.2,
                ..base
            },
            ReductionKind::HambipClosure => CampaignSpec {
                trials: 200,
                n_max: 4,
                edge_prob_min: 0.2,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.trials < 1 {
            return Err(Error::precondition("trial count must be at least 1"));
        }
        if self.n_min > self.n_max {
            return Err(Error::precondition("empty instance size range"));
        }
        if self.k_min < 1 || self.k_min > self.k_max {
            return Err(Error::precondition("bad k range"));
        }
        if !(0.0..=1.0).contains(&self.edge_prob_min)
            || !(0.0..=1.0).contains(&self.edge_prob_max)
            || self.edge_prob_min > self.edge_prob_max
        {
            return Err(Error::precondition("bad edge probability range"));
        }
        if self.budget == 0 {
            return Err(Error::precondition("budget must be positive"));
        }
        match self.kind {
            ReductionKind::ImHard if self.k_max != 1 => Err(Error::precondition(
                "the induced-matching hardness campaign verifies k = 1 only",
            )),
            ReductionKind::HamClosure if self.n_min < 2 => Err(Error::precondition(
                "hamiltonian closure needs at least 2 vertices",
            )),
            ReductionKind::HamClosure | ReductionKind::HambipClosure
                if self.edge_prob_max == 0.0 =>
            {
                Err(Error::precondition(
                    "closure campaigns need a positive edge probability",
                ))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

/// One trial's record. Everything except `runtime_ms` is a deterministic
/// function of the campaign spec and the trial seed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub instance: String,
    pub values: BTreeMap<String, Value>,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_json: Option<String>,
    /// Serialized instance, present on failures for replay.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance_dimacs: Option<String>,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Aggregate {
    pub trials: u32,
    pub passes: u32,
    pub failures: u32,
    pub unknowns: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure_seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format_version: String,
    pub campaign: CampaignSpec,
    pub trials: Vec<TrialRecord>,
    pub aggregate: Aggregate,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.aggregate.failures == 0
    }

    /// Extracts a self-contained replay bundle for the trial with the
    /// given seed.
    pub fn bundle(&self, seed: u64) -> Option<ReplayBundle> {
        self.trials.iter().find(|t| t.seed == seed).map(|t| ReplayBundle {
            format_version: self.format_version.clone(),
            campaign: self.campaign.clone(),
            trial: t.clone(),
        })
    }
}

/// A single trial plus the campaign context needed to re-run it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReplayBundle {
    pub format_version: String,
    pub campaign: CampaignSpec,
    pub trial: TrialRecord,
}

/// Runs every trial of the campaign and assembles the report.
pub fn verify(spec: &CampaignSpec) -> Result<VerificationReport, Error> {
    spec.validate()?;
    let mut master = ChaCha8Rng::seed_from_u64(spec.seed);
    let seeds: Vec<u64> = (0..spec.trials).map(|_| master.gen()).collect();
    let trials: Vec<TrialRecord> = seeds
        .par_iter()
        .map(|&ts| run_trial(spec, ts))
        .collect();
    let aggregate = aggregate(&trials);
    Ok(VerificationReport {
        format_version: FORMAT_VERSION.to_string(),
        campaign: spec.clone(),
        trials,
        aggregate,
    })
}

fn aggregate(trials: &[TrialRecord]) -> Aggregate {
    Aggregate {
        trials: trials.len() as u32,
        passes: trials.iter().filter(|t| t.outcome == Outcome::Pass).count() as u32,
        failures: trials.iter().filter(|t| t.outcome == Outcome::Fail).count() as u32,
        unknowns: trials.iter().filter(|t| t.outcome == Outcome::Unknown).count() as u32,
        first_failure_seed: trials
            .iter()
            .find(|t| t.outcome == Outcome::Fail)
            .map(|t| t.seed),
    }
}

/// Re-executes one trial and checks that it reproduces the recorded
/// outcome, values, and witness byte for byte. Rejects bundles from a
/// different format version.
pub fn replay(bundle: &ReplayBundle) -> Result<VerificationReport, Error> {
    if bundle.format_version != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            expected: FORMAT_VERSION.to_string(),
            found: bundle.format_version.clone(),
        });
    }
    bundle.campaign.validate()?;
    let mut rerun = run_trial(&bundle.campaign, bundle.trial.seed);
    let mut mismatches = Vec::new();
    if rerun.outcome != bundle.trial.outcome {
        mismatches.push(format!(
            "outcome {:?} != recorded {:?}",
            rerun.outcome, bundle.trial.outcome
        ));
    }
    if rerun.values != bundle.trial.values {
        mismatches.push("values differ".to_string());
    }
    if rerun.witness_json != bundle.trial.witness_json {
        mismatches.push("witness differs".to_string());
    }
    if rerun.instance != bundle.trial.instance {
        mismatches.push("instance summary differs".to_string());
    }
    if !mismatches.is_empty() {
        rerun.outcome = Outcome::Fail;
        rerun.detail = Some(format!("replay mismatch: {}", mismatches.join("; ")));
    }
    let aggregate = aggregate(std::slice::from_ref(&rerun));
    Ok(VerificationReport {
        format_version: FORMAT_VERSION.to_string(),
        campaign: bundle.campaign.clone(),
        trials: vec![rerun],
        aggregate,
    })
}

struct TrialCtx {
    rng: ChaCha8Rng,
    values: BTreeMap<String, Value>,
    failures: Vec<String>,
    unknown: Vec<String>,
    witness_json: Option<String>,
}

impl TrialCtx {
    fn new(seed: u64) -> Self {
        TrialCtx {
            rng: ChaCha8Rng::seed_from_u64(seed),
            values: BTreeMap::new(),
            failures: Vec::new(),
            unknown: Vec::new(),
            witness_json: None,
        }
    }

    fn sample(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.gen_range(lo..=hi)
    }

    fn sample_prob(&mut self, spec: &CampaignSpec) -> f64 {
        if spec.edge_prob_min == spec.edge_prob_max {
            spec.edge_prob_min
        } else {
            self.rng.gen_range(spec.edge_prob_min..=spec.edge_prob_max)
        }
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.values.insert(key.to_string(), value.into());
    }

    fn check(&mut self, ok: bool, what: &str) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn witness(&mut self, w: &Witness) {
        self.witness_json = Some(serde_json::to_string(w).expect("witness serializes"));
    }
}

fn run_trial(spec: &CampaignSpec, trial_seed: u64) -> TrialRecord {
    let start = Instant::now();
    let mut ctx = TrialCtx::new(trial_seed);
    let (instance, graph) = match spec.kind {
        ReductionKind::CliqueGap => trial_clique_gap(spec, &mut ctx),
        ReductionKind::ImHard => trial_im_hard(spec, &mut ctx),
        ReductionKind::Image => trial_image(spec, &mut ctx),
        ReductionKind::HamClosure => trial_ham_closure(spec, &mut ctx),
        ReductionKind::Blowup => trial_blowup(spec, &mut ctx),
        ReductionKind::HambipClosure => trial_hambip(spec, &mut ctx),
    };
    let outcome = if !ctx.failures.is_empty() {
        Outcome::Fail
    } else if !ctx.unknown.is_empty() {
        Outcome::Unknown
    } else {
        Outcome::Pass
    };
    let detail = if !ctx.failures.is_empty() {
        Some(ctx.failures.join("; "))
    } else if !ctx.unknown.is_empty() {
        Some(ctx.unknown.join("; "))
    } else {
        None
    };
    TrialRecord {
        seed: trial_seed,
        instance,
        values: ctx.values,
        outcome,
        detail,
        witness_json: ctx.witness_json,
        instance_dimacs: if outcome == Outcome::Fail {
            graph.as_ref().map(emit_graph)
        } else {
            None
        },
        runtime_ms: start.elapsed().as_millis() as u64,
    }
}

fn summary(g: &Graph, extra: &str) -> String {
    if extra.is_empty() {
        format!("n={} m={}", g.n(), g.m())
    } else {
        format!("n={} m={} {}", g.n(), g.m(), extra)
    }
}

fn trial_clique_gap(spec: &CampaignSpec, ctx: &mut TrialCtx) -> (String, Option<Graph>) {
    let n = ctx.sample(spec.n_min, spec.n_max);
    let k = ctx.sample(spec.k_min, spec.k_max);
    let p = ctx.sample_prob(spec);
    let gseed: u64 = ctx.rng.gen();
    let g = gen_random(n as usize, p, gseed);
    let out = match clique_gap::reduce(&g, k) {
        Ok(out) => out,
        Err(e) => {
            ctx.failures.push(format!("reduce failed: {e}"));
            return (summary(&g, ""), Some(g));
        }
    };
    let wg = solver::max_clique(&g, spec.budget);
    let wh = solver::max_clique(&out.graph, spec.budget);
    ctx.set("omega_g", wg.value);
    ctx.set("omega_h", wh.value);
    ctx.set("k", k);
    if wg.status != Status::Optimal || wh.status != Status::Optimal {
        ctx.unknown.push("solver budget exhausted".into());
        return (summary(&g, &format!("k={k}")), Some(g));
    }
    ctx.check(wh.value == 2 * wg.value + 1, "omega relation violated");
    ctx.witness(&Witness::Clique(wh.witness.clone()));
    if wg.value >= k {
        let c: VertexSet = wg.witness.iter().take(k as usize).collect();
        match clique_gap::lift_clique(&out, &c) {
            Ok(lifted) => {
                ctx.check(
                    lifted.len() as u32 == 2 * k + 1 && out.graph.is_clique(&lifted),
                    "lifted witness invalid",
                );
                match clique_gap::project_clique(&out, &lifted) {
                    Ok(back) => ctx.check(
                        back.len() as u32 >= k && g.is_clique(&back),
                        "projected witness invalid",
                    ),
                    Err(e) => ctx.failures.push(format!("project failed: {e}")),
                }
            }
            Err(e) => ctx.failures.push(format!("lift failed: {e}")),
        }
    }
    (summary(&g, &format!("k={k}")), Some(g))
}

fn trial_image(spec: &CampaignSpec, ctx: &mut TrialCtx) -> (String, Option<Graph>) {
    let n = ctx.sample(spec.n_min, spec.n_max);
    let p = ctx.sample_prob(spec);
    let gseed: u64 = ctx.rng.gen();
    let g = gen_random(n as usize, p, gseed);
    let out = approx::image_reduce(&g);
    let mis = solver::max_independent_set(&g, spec.budget);
    let mim = solver::max_induced_matching(&out.graph, spec.budget);
    ctx.set("mis_g", mis.value);
    ctx.set("mim_h", mim.value);
    if mis.status != Status::Optimal || mim.status != Status::Optimal {
        ctx.unknown.push("solver budget exhausted".into());
        return (summary(&g, ""), Some(g));
    }
    ctx.check(mim.value == mis.value, "optimum not preserved");
    ctx.witness(&Witness::Mim(mim.witness.clone()));
    match approx::matching_to_mis(&out, &mim.witness) {
        Ok(mapped) => ctx.check(
            mapped.len() == mim.witness.len() && g.is_independent_set(&mapped),
            "mapped witness invalid",
        ),
        Err(e) => ctx.failures.push(format!("mapping failed: {e}")),
    }
    (summary(&g, ""), Some(g))
}

/// Draws a random graph, retrying with fresh sub-seeds until it has at
/// least `min_edges` edges. Deterministic given the trial rng state.
fn sample_with_edges(
    ctx: &mut TrialCtx,
    gen: impl Fn(u64, f64) -> Graph,
    p: f64,
    min_edges: usize,
) -> Option<Graph> {
    for _ in 0..200 {
        let g = gen(ctx.rng.gen(), p);
        if g.m() >= min_edges {
            return Some(g);
        }
    }
    None
}

fn trial_ham_closure(spec: &CampaignSpec, ctx: &mut TrialCtx) -> (String, Option<Graph>) {
    let n = ctx.sample(spec.n_min.max(2), spec.n_max.max(2));
    let p = ctx.sample_prob(spec);
    let Some(g) = sample_with_edges(ctx, |s, p| gen_random(n as usize, p, s), p, 1) else {
        ctx.failures.push("could not sample an instance with an edge".into());
        return (String::from("generator exhausted"), None);
    };
    let out = match approx::ham_closure_reduce(&g) {
        Ok(out) => out,
        Err(e) => {
            ctx.failures.push(format!("reduce failed: {e}"));
            return (summary(&g, ""), Some(g));
        }
    };
    ctx.check(out.graph.n() == 2 * g.n(), "vertex count is not doubled");
    ctx.check(
        out.graph.validate_cycle(&out.ham_cycle),
        "hamiltonian cycle invalid",
    );
    let mim_g = solver::max_induced_matching(&g, spec.budget);
    let mim_h = solver::max_induced_matching(&out.graph, spec.budget);
    ctx.set("mim_g", mim_g.value);
    ctx.set("mim_h", mim_h.value);
    if mim_g.status != Status::Optimal || mim_h.status != Status::Optimal {
        ctx.unknown.push("solver budget exhausted".into());
        return (summary(&g, ""), Some(g));
    }
    ctx.check(mim_h.value == mim_g.value, "optimum not preserved");
    ctx.witness(&Witness::Mim(mim_h.witness.clone()));
    match approx::ham_closure_recover(&out, &mim_h.witness) {
        Ok(rec) => ctx.check(
            g.is_induced_matching(&rec) && rec.len() >= 1.min(mim_h.witness.len()),
            "recovered witness invalid",
        ),
        Err(e) => ctx.failures.push(format!("recovery failed: {e}")),
    }
    (summary(&g, ""), Some(g))
}

fn trial_blowup(spec: &CampaignSpec, ctx: &mut TrialCtx) -> (String, Option<Graph>) {
    let n = ctx.sample(spec.n_min, spec.n_max);
    let p = ctx.sample_prob(spec);
    let gseed: u64 = ctx.rng.gen();
    let g = gen_random(n as usize, p, gseed);
    let out = approx::blowup_reduce(&g);
    ctx.check(
        out.graph.n() == 2 * g.n().pow(4),
        "vertex count is not 2n^4",
    );
    let opt_g = solver::max_independent_set(&g, spec.budget);
    let mim_h = solver::max_induced_matching(&out.graph, spec.budget);
    ctx.set("mis_g", opt_g.value);
    ctx.set("mim_h", mim_h.value);
    if opt_g.status != Status::Optimal || mim_h.status != Status::Optimal {
        ctx.unknown.push("solver budget exhausted".into());
        return (summary(&g, ""), Some(g));
    }
    let cube = out.group_size as u64;
    let nn = g.n() as u64;
    let lower = cube * opt_g.value as u64;
    let upper = lower + nn * nn.saturating_sub(1);
    ctx.check(
        lower <= mim_h.value as u64 && (mim_h.value as u64) <= upper,
        "blow-up optimum bounds violated",
    );
    // at most one heterogeneous matching edge per ordered group pair
    let mut het: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for (x, y) in mim_h.witness.iter() {
        if out.homogeneous_source(x, y).is_none() {
            let half = (g.n() * out.group_size) as u32;
            let (a, b) = (x.min(y), x.max(y));
            let key = (a / cube as u32, (b - half) / cube as u32);
            *het.entry(key).or_insert(0) += 1;
        }
    }
    ctx.check(
        het.values().all(|&c| c <= 1),
        "heterogeneous block holds more than one matching edge",
    );
    ctx.witness(&Witness::Mim(mim_h.witness.clone()));
    match approx::blowup_to_mis(&out, &mim_h.witness) {
        Ok(set) => ctx.check(g.is_independent_set(&set), "mapped witness invalid"),
        Err(e) => ctx.failures.push(format!("mapping failed: {e}")),
    }
    (summary(&g, ""), Some(g))
}

fn trial_hambip(spec: &CampaignSpec, ctx: &mut TrialCtx) -> (String, Option<Graph>) {
    let p_side = ctx.sample(spec.n_min.max(1), spec.n_max.max(1));
    let p = ctx.sample_prob(spec);
    let Some(g) = sample_with_edges(ctx, |s, p| gen_random_bipartite(p_side as usize, p, s), p, 1)
    else {
        ctx.failures.push("could not sample an instance with an edge".into());
        return (String::from("generator exhausted"), None);
    };
    let out = match approx::hambip_closure_reduce(&g) {
        Ok(out) => out,
        Err(e) => {
            ctx.failures.push(format!("reduce failed: {e}"));
            return (summary(&g, ""), Some(g));
        }
    };
    ctx.check(
        out.graph.n() == 4 * p_side as usize + 2,
        "vertex count is not 4p+2",
    );
    let sides = out.graph.sides().expect("closure output is side-labeled");
    let s1 = sides.iter().filter(|s| **s == Side::S1).count();
    ctx.check(2 * s1 == out.graph.n(), "output is not equally sided");
    ctx.check(
        out.graph.validate_cycle(&out.ham_cycle),
        "hamiltonian cycle invalid",
    );
    let mim_g = solver::max_induced_matching(&g, spec.budget);
    let mim_h = solver::max_induced_matching(&out.graph, spec.budget);
    ctx.set("mim_g", mim_g.value);
    ctx.set("mim_h", mim_h.value);
    if mim_g.status != Status::Optimal || mim_h.status != Status::Optimal {
        ctx.unknown.push("solver budget exhausted".into());
        return (summary(&g, ""), Some(g));
    }
    ctx.check(mim_h.value == mim_g.value, "optimum not preserved");
    ctx.witness(&Witness::Mim(mim_h.witness.clone()));
    match approx::hambip_recover(&out, &mim_h.witness) {
        Ok(rec) => ctx.check(g.is_induced_matching(&rec), "recovered witness invalid"),
        Err(e) => ctx.failures.push(format!("recovery failed: {e}")),
    }
    (summary(&g, &format!("p={p_side}")), Some(g))
}

/// Triangle-free 7-vertex instances: either a 7-cycle with extra chords
/// added only when they close no triangle, or a 3+4 complete bipartite
/// graph with a random subset of edges removed (keeping at least 3).
fn triangle_free_7(ctx: &mut TrialCtx) -> Graph {
    if ctx.rng.gen_bool(0.5) {
        let mut b = GraphBuilder::new(7);
        let mut adj = vec![0u8; 49];
        let link = |b: &mut GraphBuilder, adj: &mut Vec<u8>, u: u32, v: u32| {
            b.add_edge(u, v);
            adj[(u * 7 + v) as usize] = 1;
            adj[(v * 7 + u) as usize] = 1;
        };
        for u in 0..7u32 {
            link(&mut b, &mut adj, u, (u + 1) % 7);
        }
        let mut chords: Vec<(u32, u32)> = Vec::new();
        for u in 0..7u32 {
            for v in u + 1..7 {
                if adj[(u * 7 + v) as usize] == 0 {
                    chords.push((u, v));
                }
            }
        }
        for (u, v) in chords {
            if !ctx.rng.gen_bool(0.4) {
                continue;
            }
            let closes_triangle =
                (0..7u32).any(|w| adj[(u * 7 + w) as usize] == 1 && adj[(v * 7 + w) as usize] == 1);
            if !closes_triangle {
                link(&mut b, &mut adj, u, v);
            }
        }
        b.build()
    } else {
        let full = gen_complete_bipartite(3, 4);
        let mut b = GraphBuilder::new(7);
        let mut kept = 0;
        let total = full.m();
        for (i, &(u, v)) in full.edges().iter().enumerate() {
            let must_keep = total - i <= 3 - kept.min(3);
            if must_keep || ctx.rng.gen_bool(0.7) {
                b.add_edge(u, v);
                kept += 1;
            }
        }
        b.build()
    }
}

fn trial_im_hard(spec: &CampaignSpec, ctx: &mut TrialCtx) -> (String, Option<Graph>) {
    let p = ctx.sample_prob(spec);
    let g = if ctx.rng.gen_bool(0.5) {
        match sample_with_edges(ctx, |s, p| gen_random(7, p, s), p, 3) {
            Some(g) => g,
            None => gen_cycle(7),
        }
    } else {
        triangle_free_7(ctx)
    };
    let out = match im_hardness::build(&g, 1) {
        Ok(out) => out,
        Err(e) => {
            ctx.failures.push(format!("build failed: {e}"));
            return (summary(&g, ""), Some(g));
        }
    };
    ctx.check(
        out.graph.n() == 18 * (g.n() + g.m()),
        "vertex count formula violated",
    );
    ctx.check(out.graph.monochromatic_edge().is_none(), "bipartition invalid");
    ctx.check(
        out.graph.validate_cycle(&out.ham_cycle),
        "hamiltonian cycle invalid",
    );

    let clique3 = solver::has_clique(&g, 3, 1_000_000);
    match clique3.verdict {
        Verdict::Yes(c) => {
            ctx.set("omega_ge_3", true);
            let triangle: VertexSet = c.iter().take(3).collect();
            match im_hardness::lift_clique_to_matching(&out, &triangle) {
                Ok(m) => {
                    ctx.check(
                        m.len() as u32 == out.target && out.graph.is_induced_matching(&m),
                        "lifted matching invalid",
                    );
                    let census = im_hardness::matching_census(&out, &m);
                    ctx.check(
                        census.boundary_edges == 0
                            && census.all_gadgets_good()
                            && census.gadget_edges.iter().all(|&c| c == 3)
                            && census.group_edges.iter().all(|&c| c == 3 * out.k),
                        "census of lifted matching is off",
                    );
                    ctx.witness(&Witness::Mim(m.clone()));
                    match im_hardness::extract_clique_from_matching(&out, &m) {
                        Ok(back) => ctx.check(back == triangle, "extract did not invert lift"),
                        Err(e) => ctx.failures.push(format!("soundness: {e}")),
                    }
                }
                Err(e) => ctx.failures.push(format!("lift failed: {e}")),
            }
        }
        Verdict::No => {
            ctx.set("omega_ge_3", false);
            let decision = solver::has_induced_matching(&out.graph, out.target, spec.budget);
            ctx.set("decision_nodes", decision.nodes);
            match decision.verdict {
                Verdict::No => {}
                Verdict::Yes(m) => {
                    // would falsify the reduction; extract for the record
                    let msg = match im_hardness::extract_clique_from_matching(&out, &m) {
                        Ok(c) => format!("triangle-free source produced a clique {:?}", c.as_slice()),
                        Err(e) => format!("{e}"),
                    };
                    ctx.failures.push(format!(
                        "full matching found in a no-instance: {msg}"
                    ));
                }
                Verdict::Unknown => ctx.unknown.push("decision budget exhausted".into()),
            }
        }
        Verdict::Unknown => ctx.unknown.push("clique decision budget exhausted".into()),
    }
    (summary(&g, "k=1"), Some(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec(kind: ReductionKind, trials: u32) -> CampaignSpec {
        CampaignSpec {
            trials,
            seed: 7,
            budget: 10_000_000,
            ..CampaignSpec::defaults_for(kind)
        }
    }

    #[test]
    fn image_campaign_passes() {
        let report = verify(&small_spec(ReductionKind::Image, 10)).unwrap();
        assert!(report.passed());
        assert_eq!(report.aggregate.trials, 10);
        assert_eq!(report.aggregate.passes, 10);
    }

    #[test]
    fn clique_gap_campaign_passes() {
        let report = verify(&small_spec(ReductionKind::CliqueGap, 10)).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = small_spec(ReductionKind::HamClosure, 6);
        let a = verify(&spec).unwrap();
        let b = verify(&spec).unwrap();
        for (ta, tb) in a.trials.iter().zip(&b.trials) {
            assert_eq!(ta.seed, tb.seed);
            assert_eq!(ta.values, tb.values);
            assert_eq!(ta.witness_json, tb.witness_json);
        }
    }

    #[test]
    fn replay_of_a_pass_passes_and_reproduces_the_witness() {
        let spec = small_spec(ReductionKind::Image, 3);
        let report = verify(&spec).unwrap();
        let seed = report.trials[1].seed;
        let bundle = report.bundle(seed).unwrap();
        let replayed = replay(&bundle).unwrap();
        assert!(replayed.passed());
        assert_eq!(replayed.trials[0].witness_json, bundle.trial.witness_json);
    }

    #[test]
    fn replay_rejects_version_mismatch() {
        let spec = small_spec(ReductionKind::Image, 1);
        let report = verify(&spec).unwrap();
        let mut bundle = report.bundle(report.trials[0].seed).unwrap();
        bundle.format_version = "0".to_string();
        match replay(&bundle) {
            Err(Error::VersionMismatch { .. }) => {}
            other => panic!("expected version mismatch, got {other:?}"),
        }
    }

    #[test]
    fn spec_validation() {
        let mut spec = CampaignSpec::defaults_for(ReductionKind::ImHard);
        spec.k_max = 2;
        assert!(spec.validate().is_err());
        let mut spec = CampaignSpec::defaults_for(ReductionKind::Image);
        spec.trials = 0;
        assert!(spec.validate().is_err());
        let mut spec = CampaignSpec::defaults_for(ReductionKind::Blowup);
        spec.edge_prob_min = 1.5;
        assert!(spec.validate().is_err());
    }
}
