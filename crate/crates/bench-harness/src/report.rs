//! Aggregation of a results table into per-configuration summaries and a
//! per-instance comparison series.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::BenchRow;

/// Aggregate quality and cost of one solver × sampler configuration.
/// Error rows are excluded from every statistic and counted in `failures`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverSummary {
    pub solver: String,
    pub sampler: String,
    pub runs: usize,
    pub failures: usize,
    pub mean_k: f64,
    /// Mean of `k − χ`.
    pub mean_excess: f64,
    /// Fraction of runs with `k == χ`.
    pub optimal_rate: f64,
    pub mean_nodes: f64,
    pub max_nodes: u64,
    pub mean_wall_s: f64,
    /// Distribution of `k − χ` over runs.
    pub excess_counts: BTreeMap<usize, usize>,
    /// Distribution of explored node counts over runs.
    pub nodes_explored_counts: BTreeMap<u64, usize>,
}

/// Groups rows by (solver, sampler) in first-appearance order.
pub fn summarize(rows: &[BenchRow]) -> Vec<SolverSummary> {
    let mut order: Vec<(String, String)> = Vec::new();
    for r in rows {
        let key = (r.solver.clone(), r.sampler.clone());
        if !order.contains(&key) {
            order.push(key);
        }
    }
    order
        .into_iter()
        .map(|(solver, sampler)| {
            let failures = rows
                .iter()
                .filter(|r| r.solver == solver && r.sampler == sampler && !r.succeeded())
                .count();
            let group: Vec<&BenchRow> = rows
                .iter()
                .filter(|r| r.solver == solver && r.sampler == sampler && r.succeeded())
                .collect();
            let runs = group.len();
            let fr = (runs as f64).max(1.0);
            let mut excess_counts = BTreeMap::new();
            let mut nodes_explored_counts = BTreeMap::new();
            for r in &group {
                *excess_counts.entry(r.k - r.chi).or_insert(0) += 1;
                *nodes_explored_counts.entry(r.nodes_explored).or_insert(0) += 1;
            }
            SolverSummary {
                runs,
                failures,
                mean_k: group.iter().map(|r| r.k as f64).sum::<f64>() / fr,
                mean_excess: group.iter().map(|r| (r.k - r.chi) as f64).sum::<f64>() / fr,
                optimal_rate: group.iter().filter(|r| r.k == r.chi).count() as f64 / fr,
                mean_nodes: group.iter().map(|r| r.nodes_explored as f64).sum::<f64>() / fr,
                max_nodes: group.iter().map(|r| r.nodes_explored).max().unwrap_or(0),
                mean_wall_s: group.iter().map(|r| r.wall_s).sum::<f64>() / fr,
                excess_counts,
                nodes_explored_counts,
                solver,
                sampler,
            }
        })
        .collect()
}

pub fn render_summary(summaries: &[SolverSummary]) -> String {
    let mut out = String::new();
    out.push_str(
        "solver   sampler   runs  mean_k  mean_excess  optimal_rate  mean_nodes  max_nodes  mean_wall_s\n",
    );
    for s in summaries {
        if s.failures > 0 {
            out.push_str(&format!(
                "{:<8} {:<9} {} of {} runs failed\n",
                s.solver,
                s.sampler,
                s.failures,
                s.failures + s.runs
            ));
        }
        out.push_str(&format!(
            "{:<8} {:<9} {:>4}  {:>6.3}  {:>11.3}  {:>12.3}  {:>10.2}  {:>9}  {:>11.6}\n",
            s.solver,
            s.sampler,
            s.runs,
            s.mean_k,
            s.mean_excess,
            s.optimal_rate,
            s.mean_nodes,
            s.max_nodes,
            s.mean_wall_s
        ));
    }
    out
}

/// Head-to-head series: per instance, χ next to each heuristic's best
/// `k` with the idealized (exact) sampler, falling back to the first row of
/// that solver when no exact-sampler row exists.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesRow {
    pub instance: String,
    pub n: usize,
    pub chi: usize,
    pub greedy_k: Option<usize>,
    pub bbq_k: Option<usize>,
}

pub fn series(rows: &[BenchRow]) -> Vec<SeriesRow> {
    let mut seen = BTreeSet::new();
    let mut instances: Vec<&BenchRow> = Vec::new();
    for r in rows {
        if seen.insert(r.instance.clone()) {
            instances.push(r);
        }
    }
    instances
        .into_iter()
        .map(|first| {
            let pick = |solver: &str| -> Option<usize> {
                let ok = |r: &&BenchRow| {
                    r.instance == first.instance && r.solver == solver && r.succeeded()
                };
                rows.iter()
                    .find(|r| ok(r) && r.sampler == "exact")
                    .or_else(|| rows.iter().find(ok))
                    .map(|r| r.k)
            };
            SeriesRow {
                instance: first.instance.clone(),
                n: first.n,
                chi: first.chi,
                greedy_k: pick("greedy"),
                bbq_k: pick("bbq"),
            }
        })
        .collect()
}

pub fn render_series(rows: &[SeriesRow]) -> String {
    let mut out = String::from("instance,n,chi,greedy_k,bbq_k\n");
    let opt = |v: Option<usize>| v.map(|k| k.to_string()).unwrap_or_default();
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.instance,
            r.n,
            r.chi,
            opt(r.greedy_k),
            opt(r.bbq_k)
        ));
    }
    out
}
