//! Hardware shot accounting: what a search would cost on a real machine.
//!
//! Every node the branch-and-bound solver expands asks the sampler for a
//! histogram; behind a quantum backend that is a full variational run —
//! `max_evals` objective evaluations at `eval_shots` each plus the final
//! measurement. Multiplying through by a repetition rate turns a node budget
//! directly into queue time, which is why node budgets in the tens, not the
//! thousands, are the operating point.

use rydberg_emulator::QaoaConfig;
use serde::{Deserialize, Serialize};

/// Default neutral-atom cycle rate (prepare, drive, read out), Hz.
pub const DEFAULT_REPETITION_RATE_HZ: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotBudgetReport {
    pub nodes: u64,
    /// Shots one node costs: optimizer evaluations plus the final readout.
    pub shots_per_node: u64,
    pub total_shots: u64,
    pub repetition_rate_hz: f64,
    pub seconds: f64,
    pub hours: f64,
}

/// Total measurement cost of expanding `nodes` search nodes with the given
/// variational settings at `rate_hz` cycles per second.
pub fn shot_budget(nodes: u64, cfg: &QaoaConfig, rate_hz: f64) -> ShotBudgetReport {
    let shots_per_node = cfg.max_evals * cfg.eval_shots + cfg.final_shots;
    let total_shots = nodes * shots_per_node;
    let seconds = total_shots as f64 / rate_hz;
    ShotBudgetReport {
        nodes,
        shots_per_node,
        total_shots,
        repetition_rate_hz: rate_hz,
        seconds,
        hours: seconds / 3600.0,
    }
}

pub fn render_budget(r: &ShotBudgetReport) -> String {
    format!(
        "nodes            {}\n\
         shots per node   {}\n\
         total shots      {}\n\
         repetition rate  {} Hz\n\
         wall time        {:.1} s ({:.2} h)\n",
        r.nodes, r.shots_per_node, r.total_shots, r.repetition_rate_hz, r.seconds, r.hours
    )
}
