//! Experiment runner: the solver × sampler sweep over a dataset, with
//! per-row verification and a deterministic row order regardless of how many
//! threads carry the work.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use coloring_engine::{
    bbq_mis, exact_chromatic, greedy_it_mis, verify_coloring, BBConfig, SolveReport, TerminatedBy,
};
use mis_sampling::seed::mix3;
use mis_sampling::{ExactMisSampler, MisSampler, RandomGreedySampler};
use rydberg_emulator::{QaoaConfig, QaoaSampler};
use serde::{Deserialize, Serialize};
use spectral_bounds::{BoundsReport, Rounding};

use crate::{HarnessError, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Bbq,
    Greedy,
    Exact,
}

impl SolverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Bbq => "bbq",
            SolverKind::Greedy => "greedy",
            SolverKind::Exact => "exact",
        }
    }
}

impl FromStr for SolverKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "bbq" => Ok(SolverKind::Bbq),
            "greedy" => Ok(SolverKind::Greedy),
            "exact" => Ok(SolverKind::Exact),
            other => Err(HarnessError::BadArg(format!(
                "unknown solver {other:?} (expected bbq, greedy, or exact)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    Exact,
    Rgreedy,
    Qaoa,
}

impl SamplerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SamplerKind::Exact => "exact",
            SamplerKind::Rgreedy => "rgreedy",
            SamplerKind::Qaoa => "qaoa",
        }
    }

    /// Stable salt so a run's sampler stream depends on the instance and the
    /// sampler but not on which solver consumes it — the two heuristics see
    /// identical histograms on identical residual subgraphs.
    fn seed_tag(self) -> u64 {
        match self {
            SamplerKind::Exact => 0,
            SamplerKind::Rgreedy => 1,
            SamplerKind::Qaoa => 2,
        }
    }
}

impl FromStr for SamplerKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "exact" => Ok(SamplerKind::Exact),
            "rgreedy" => Ok(SamplerKind::Rgreedy),
            "qaoa" => Ok(SamplerKind::Qaoa),
            other => Err(HarnessError::BadArg(format!(
                "unknown sampler {other:?} (expected exact, rgreedy, or qaoa)"
            ))),
        }
    }
}

pub fn make_sampler(kind: SamplerKind, qaoa: &QaoaConfig) -> Box<dyn MisSampler> {
    match kind {
        SamplerKind::Exact => Box::new(ExactMisSampler::default()),
        SamplerKind::Rgreedy => Box::new(RandomGreedySampler),
        SamplerKind::Qaoa => Box::new(QaoaSampler { config: qaoa.clone() }),
    }
}

/// One benchmark sweep's settings.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub solvers: Vec<SolverKind>,
    pub samplers: Vec<SamplerKind>,
    /// Shots per sampler call inside the heuristics.
    pub shots: u64,
    pub node_budget: Option<u64>,
    /// Worker threads inside one branch-and-bound search.
    pub workers: usize,
    /// Instances processed concurrently. Never affects row values or order.
    pub threads: usize,
    /// Write 0.0 for every wall-time column (byte-reproducible output).
    pub zero_timing: bool,
    /// Fail the whole sweep on the first run error instead of recording an
    /// error row and moving on.
    pub strict: bool,
    pub master_seed: u64,
    pub qaoa: QaoaConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            solvers: vec![SolverKind::Bbq, SolverKind::Greedy, SolverKind::Exact],
            samplers: vec![SamplerKind::Exact, SamplerKind::Rgreedy],
            shots: 4096,
            node_budget: Some(50),
            workers: 1,
            threads: 1,
            zero_timing: false,
            strict: false,
            master_seed: 77,
            qaoa: QaoaConfig::default(),
        }
    }
}

/// One CSV line of the results table. A run that failed (sampler backend
/// error, for instance) keeps its row with `terminated_by = "error"` and
/// `k = 0`; summaries skip such rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub solver: String,
    pub sampler: String,
    pub k: usize,
    pub chi: usize,
    pub nodes_explored: u64,
    pub shots: u64,
    pub wall_s: f64,
    pub terminated_by: String,
    pub seed: u64,
}

impl BenchRow {
    /// True when the run completed and `k` is a real coloring size.
    pub fn succeeded(&self) -> bool {
        self.terminated_by != "error"
    }
}

fn terminated_str(t: TerminatedBy) -> &'static str {
    match t {
        TerminatedBy::Optimality => "optimality",
        TerminatedBy::NodeBudget => "node_budget",
    }
}

/// χ with a spectral lower-bound hint to shrink the exact search.
pub fn chromatic_number(g: &graph_core::Graph) -> Result<usize, HarnessError> {
    let (lb, _) = BoundsReport::compute(g, Rounding::Floor).combined();
    let (chi, _) = exact_chromatic(g, lb, g.n().max(1))?;
    Ok(chi)
}

/// Full solver report for one (instance, solver, sampler) cell, as the
/// `solve` subcommand prints it.
#[derive(Debug, Serialize)]
pub struct SolveOutput {
    pub row: BenchRow,
    /// Search report for the heuristic solvers; absent for `exact`.
    pub report: Option<SolveReport>,
}

pub fn solve_one(
    inst: &Instance,
    ordinal: usize,
    solver: SolverKind,
    sampler_kind: SamplerKind,
    cfg: &BenchConfig,
) -> Result<SolveOutput, HarnessError> {
    let chi = chromatic_number(&inst.graph)?;
    run_cell(inst, ordinal, solver, sampler_kind, cfg, chi)
}

fn run_cell(
    inst: &Instance,
    ordinal: usize,
    solver: SolverKind,
    sampler_kind: SamplerKind,
    cfg: &BenchConfig,
    chi: usize,
) -> Result<SolveOutput, HarnessError> {
    let g = &inst.graph;
    let mut base = BenchRow {
        instance: inst.id.clone(),
        n: g.n(),
        m: g.m(),
        solver: solver.as_str().to_string(),
        sampler: sampler_kind.as_str().to_string(),
        k: chi,
        chi,
        nodes_explored: 0,
        shots: 0,
        wall_s: 0.0,
        terminated_by: "optimality".to_string(),
        seed: mix3(cfg.master_seed, ordinal as u64, sampler_kind.seed_tag()),
    };
    let output = match solver {
        SolverKind::Exact => {
            base.sampler = "-".to_string();
            base.seed = mix3(cfg.master_seed, ordinal as u64, u64::MAX);
            let started = Instant::now();
            let (k, coloring) = exact_chromatic(g, 1, g.n().max(1))?;
            base.wall_s = started.elapsed().as_secs_f64();
            base.k = k;
            if !verify_coloring(g, &coloring) {
                return Err(HarnessError::BadColoring {
                    instance: inst.id.clone(),
                    solver: "exact".to_string(),
                });
            }
            SolveOutput { row: base, report: None }
        }
        SolverKind::Bbq => {
            let sampler = make_sampler(sampler_kind, &cfg.qaoa);
            let bb = BBConfig {
                node_budget: cfg.node_budget,
                shots: cfg.shots,
                seed: base.seed,
                parallelism: cfg.workers,
                ..BBConfig::default()
            };
            let (coloring, report) = bbq_mis(g, sampler.as_ref(), &bb)?;
            if !verify_coloring(g, &coloring) {
                return Err(HarnessError::BadColoring {
                    instance: inst.id.clone(),
                    solver: "bbq".to_string(),
                });
            }
            base.k = coloring.k();
            base.nodes_explored = report.nodes_explored;
            base.shots = report.shots_consumed;
            base.wall_s = report.wall_time;
            base.terminated_by = terminated_str(report.terminated_by).to_string();
            SolveOutput { row: base, report: Some(report) }
        }
        SolverKind::Greedy => {
            let sampler = make_sampler(sampler_kind, &cfg.qaoa);
            let (coloring, report) = greedy_it_mis(g, sampler.as_ref(), cfg.shots, base.seed)?;
            if !verify_coloring(g, &coloring) {
                return Err(HarnessError::BadColoring {
                    instance: inst.id.clone(),
                    solver: "greedy".to_string(),
                });
            }
            base.k = coloring.k();
            base.nodes_explored = report.nodes_explored;
            base.shots = report.shots_consumed;
            base.wall_s = report.wall_time;
            base.terminated_by = terminated_str(report.terminated_by).to_string();
            SolveOutput { row: base, report: Some(report) }
        }
    };
    Ok(output)
}

fn error_row(
    inst: &Instance,
    ordinal: usize,
    solver: SolverKind,
    sampler_kind: SamplerKind,
    cfg: &BenchConfig,
    chi: usize,
) -> BenchRow {
    BenchRow {
        instance: inst.id.clone(),
        n: inst.graph.n(),
        m: inst.graph.m(),
        solver: solver.as_str().to_string(),
        sampler: if solver == SolverKind::Exact { "-".to_string() } else { sampler_kind.as_str().to_string() },
        k: 0,
        chi,
        nodes_explored: 0,
        shots: 0,
        wall_s: 0.0,
        terminated_by: "error".to_string(),
        seed: mix3(cfg.master_seed, ordinal as u64, sampler_kind.seed_tag()),
    }
}

fn run_instance(
    inst: &Instance,
    ordinal: usize,
    cfg: &BenchConfig,
) -> Result<Vec<BenchRow>, HarnessError> {
    // χ is computed once per instance and shared by every row.
    let chi = chromatic_number(&inst.graph)?;
    let mut rows = Vec::new();
    for &solver in &cfg.solvers {
        let cells: Vec<SamplerKind> = match solver {
            SolverKind::Exact => vec![SamplerKind::Exact], // placeholder; row says "-"
            _ => cfg.samplers.clone(),
        };
        for sampler in cells {
            match run_cell(inst, ordinal, solver, sampler, cfg, chi) {
                Ok(mut out) => {
                    if cfg.zero_timing {
                        out.row.wall_s = 0.0;
                    }
                    rows.push(out.row);
                }
                // A solver handing back a coloring that fails verification is
                // a defect, never a recordable outcome.
                Err(e @ HarnessError::BadColoring { .. }) => return Err(e),
                Err(e) if cfg.strict => return Err(e),
                Err(e) => {
                    eprintln!(
                        "{} {} × {} failed: {e}",
                        inst.id,
                        solver.as_str(),
                        sampler.as_str()
                    );
                    rows.push(error_row(inst, ordinal, solver, sampler, cfg, chi));
                }
            }
        }
    }
    Ok(rows)
}

/// Runs the whole sweep. Rows come back grouped by instance in dataset
/// order; inside one instance the order is solvers × samplers as configured.
pub fn run_bench(instances: &[Instance], cfg: &BenchConfig) -> Result<Vec<BenchRow>, HarnessError> {
    let threads = cfg.threads.max(1).min(instances.len().max(1));
    let slots: Vec<Mutex<Option<Vec<BenchRow>>>> =
        (0..instances.len()).map(|_| Mutex::new(None)).collect();
    let failure: Mutex<Option<HarnessError>> = Mutex::new(None);
    let cursor = AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let idx = cursor.fetch_add(1, Ordering::Relaxed);
                if idx >= instances.len() || failure.lock().unwrap().is_some() {
                    return;
                }
                match run_instance(&instances[idx], idx, cfg) {
                    Ok(rows) => *slots[idx].lock().unwrap() = Some(rows),
                    Err(e) => {
                        let mut slot = failure.lock().unwrap();
                        if slot.is_none() {
                            *slot = Some(e);
                        }
                        return;
                    }
                }
            });
        }
    });

    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let mut rows = Vec::new();
    for slot in slots {
        rows.extend(slot.into_inner().unwrap().expect("every instance ran"));
    }
    Ok(rows)
}
