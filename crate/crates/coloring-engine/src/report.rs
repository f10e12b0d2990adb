use serde::{Deserialize, Serialize};

use crate::Coloring;

/// Why a solver run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminatedBy {
    /// The search space was exhausted; the result is the best reachable
    /// coloring under the configured sampler and pruning rules.
    Optimality,
    /// The exploration budget ran out first.
    NodeBudget,
}

/// Subtree-elimination counters, by rule.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneCounts {
    /// Nodes whose lower bound could not beat the incumbent.
    pub non_improving: u64,
    /// Sampler histogram entries that were not maximal independent sets and
    /// therefore never became nodes.
    pub unfeasible: u64,
    /// Child subproblems identical to one already explored at the same or
    /// shallower depth.
    pub redundant: u64,
}

impl PruneCounts {
    pub fn total(&self) -> u64 {
        self.non_improving + self.unfeasible + self.redundant
    }
}

/// What happened to a node, in event order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceAction {
    /// The node was constructed and queued.
    Created,
    /// The node was popped and its subgraph was sampled for branching.
    Sampled,
    /// The node's subgraph was edgeless; its completed coloring was scored
    /// against the incumbent.
    Leaf,
    /// The node was discarded because its lower bound could not improve on
    /// the incumbent.
    PrunedNonImproving,
}

/// One step of the search, for debugging and for auditing monotonicity of the
/// incumbent.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TraceEvent {
    pub node: u64,
    pub parent: Option<u64>,
    pub depth: usize,
    pub lb: usize,
    pub ub: usize,
    pub priority: i64,
    pub action: TraceAction,
    /// Colors used by the incumbent immediately after this event.
    pub incumbent_k: usize,
}

/// Outcome of a solver run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    /// Best proper coloring found.
    pub best: Coloring,
    /// Nodes whose subgraph was handed to the sampler. Leaves are scored,
    /// not explored, so they do not count here.
    pub nodes_explored: u64,
    pub nodes_pruned: PruneCounts,
    /// Edgeless subproblems reached and scored.
    pub leaves: u64,
    /// Total sampler shots actually drawn.
    pub shots_consumed: u64,
    /// Wall-clock seconds for the whole run.
    pub wall_time: f64,
    pub terminated_by: TerminatedBy,
    /// Event log in the order things happened. Empty for solvers that do not
    /// maintain a search tree.
    pub trace: Vec<TraceEvent>,
}

impl SolveReport {
    /// Colors used by the best coloring.
    pub fn k(&self) -> usize {
        self.best.k()
    }
}
