//! Best-first branch-and-bound over sampled maximal independent sets.
//!
//! Each node carries a residual subgraph plus the color classes fixed so far.
//! Expanding a node draws one histogram from the sampler; every distinct
//! outcome that is a maximal independent set of the residual graph spawns a
//! child with that set as the next class. Edgeless residual graphs are leaves:
//! their one-class completion is scored against the incumbent. Because some
//! optimal coloring always contains a maximal-independent color class, an
//! exhaustive sampler with no node budget makes the search exact.

use std::collections::{BinaryHeap, HashMap};
use std::sync::{Condvar, Mutex};
use std::time::Instant;

use graph_core::{Graph, VertexSet};
use mis_sampling::MisSampler;
use serde::{Deserialize, Serialize};
use spectral_bounds::bounds::{BoundsReport, Rounding};

use crate::coloring::worst_case_completion;
use crate::report::{PruneCounts, SolveReport, TerminatedBy, TraceAction, TraceEvent};
use crate::{sample_seed, Coloring, EngineError};

/// Queue discipline for picking the next node to expand.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExplorationPolicy {
    /// Best-first on `-(upper bound × residual edges)`; leaves score 0 and
    /// therefore pop ahead of everything else.
    #[default]
    Priority,
    /// Breadth-first (creation order).
    Fifo,
    /// Depth-first (newest first).
    Dfs,
    /// Smallest bound gap `ub - lb` first.
    Gap,
}

/// Branch-and-bound knobs. `Default` is the benchmark configuration; all
/// fields are optional in serialized form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct BBConfig {
    /// Maximum number of sampler-invoking node expansions. Leaves and pruned
    /// nodes are free. `None` removes the cap.
    pub node_budget: Option<u64>,
    /// Shots per sampler call.
    pub shots: u64,
    /// Master seed; every node reseeds the sampler as a pure function of
    /// this and the node's residual vertex set, so results do not depend on
    /// exploration interleaving.
    pub seed: u64,
    /// How fractional lower bounds are rounded into integers.
    pub lb_rounding: Rounding,
    pub exploration: ExplorationPolicy,
    /// Worker threads sharing the queue. Results are invariant in this; 1
    /// additionally makes the event trace deterministic.
    pub parallelism: usize,
    /// Discard nodes whose lower bound cannot beat the incumbent.
    pub prune_non_improving: bool,
    /// Discard child subproblems already seen at the same or shallower depth.
    pub prune_redundant: bool,
}

impl Default for BBConfig {
    fn default() -> Self {
        Self {
            node_budget: Some(50),
            shots: 4096,
            seed: 0,
            lb_rounding: Rounding::Floor,
            exploration: ExplorationPolicy::Priority,
            parallelism: 1,
            prune_non_improving: true,
            prune_redundant: true,
        }
    }
}

struct Node {
    id: u64,
    parent: Option<u64>,
    subgraph: Graph,
    /// Color classes fixed on the path from the root; `len()` is the depth.
    inherited: Vec<VertexSet>,
    /// Colors any completion of this node must use at least.
    lb: usize,
    /// Colors the cheapest completion of this node needs at most.
    ub: usize,
    priority: i64,
}

impl Node {
    fn depth(&self) -> usize {
        self.inherited.len()
    }

    fn event(&self, action: TraceAction, incumbent_k: usize) -> TraceEvent {
        TraceEvent {
            node: self.id,
            parent: self.parent,
            depth: self.depth(),
            lb: self.lb,
            ub: self.ub,
            priority: self.priority,
            action,
            incumbent_k,
        }
    }
}

/// Bracket the colors needed to finish a node: fixed classes so far plus the
/// chromatic bracket of what remains.
fn node_bounds(subgraph: &Graph, depth: usize, rounding: Rounding) -> (usize, usize, i64) {
    let (lb, ub) = BoundsReport::compute(subgraph, rounding).combined();
    let total_lb = depth + lb;
    let total_ub = depth + ub;
    let priority = -(total_ub as i64) * (subgraph.m() as i64);
    (total_lb, total_ub, priority)
}

struct HeapEntry {
    key: (i64, i64),
    node: Node,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

/// Max-heap key per policy. `seq` is the global creation number; keys are
/// unique, which keeps pop order independent of heap internals.
fn heap_key(policy: ExplorationPolicy, node: &Node, seq: u64) -> (i64, i64) {
    let s = seq as i64;
    match policy {
        ExplorationPolicy::Priority => (node.priority, -s),
        ExplorationPolicy::Fifo => (-s, 0),
        ExplorationPolicy::Dfs => (s, 0),
        ExplorationPolicy::Gap => (-((node.ub - node.lb) as i64), -s),
    }
}

struct SearchState {
    queue: BinaryHeap<HeapEntry>,
    incumbent: Coloring,
    /// Residual-subgraph fingerprint → shallowest depth admitted so far.
    /// Re-admitting only at strictly shallower depth keeps the prune sound
    /// under any exploration interleaving.
    seen: HashMap<u64, usize>,
    explored: u64,
    leaves: u64,
    shots: u64,
    prunes: PruneCounts,
    next_id: u64,
    next_seq: u64,
    /// Nodes currently being expanded outside the lock.
    active: usize,
    budget_exhausted: bool,
    error: Option<EngineError>,
    trace: Vec<TraceEvent>,
}

struct ChildDraft {
    subgraph: Graph,
    inherited: Vec<VertexSet>,
    lb: usize,
    ub: usize,
    priority: i64,
}

struct Expansion {
    shots: u64,
    unfeasible: u64,
    children: Vec<ChildDraft>,
}

/// Samples a node's residual graph and drafts one child per distinct outcome
/// that is a maximal independent set, in frequency order. Runs outside the
/// queue lock.
fn expand(node: &Node, cfg: &BBConfig, sampler: &dyn MisSampler) -> Result<Expansion, EngineError> {
    let g = &node.subgraph;
    let hist = sampler.sample(g, cfg.shots, sample_seed(cfg.seed, g.fingerprint()))?;
    let mut out = Expansion { shots: hist.shots(), unfeasible: 0, children: Vec::new() };
    for (set, _count) in hist.by_frequency() {
        match g.is_maximal_independent(set) {
            Ok(true) => {}
            Ok(false) => {
                out.unfeasible += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        }
        let subgraph = g.induced_remove(set)?;
        let mut inherited = node.inherited.clone();
        inherited.push(set);
        let (lb, ub, priority) = node_bounds(&subgraph, inherited.len(), cfg.lb_rounding);
        out.children.push(ChildDraft { subgraph, inherited, lb, ub, priority });
    }
    Ok(out)
}

fn leaf_coloring(node: &Node) -> Result<Coloring, EngineError> {
    let mut classes = node.inherited.clone();
    if node.subgraph.n() > 0 {
        classes.push(node.subgraph.vertex_set());
    }
    Coloring::new(classes)
}

/// Registers a drafted child: dedupes against `seen`, assigns an id, applies
/// the bound prune, and queues survivors.
fn admit_child(s: &mut SearchState, cfg: &BBConfig, parent_id: u64, draft: ChildDraft) {
    let fp = draft.subgraph.fingerprint();
    let depth = draft.inherited.len();
    if cfg.prune_redundant {
        if let Some(&d) = s.seen.get(&fp) {
            if d <= depth {
                s.prunes.redundant += 1;
                return;
            }
        }
        s.seen.insert(fp, depth);
    }
    let node = Node {
        id: s.next_id,
        parent: Some(parent_id),
        subgraph: draft.subgraph,
        inherited: draft.inherited,
        lb: draft.lb,
        ub: draft.ub,
        priority: draft.priority,
    };
    s.next_id += 1;
    let ik = s.incumbent.k();
    s.trace.push(node.event(TraceAction::Created, ik));
    if cfg.prune_non_improving && node.lb >= ik {
        s.prunes.non_improving += 1;
        s.trace.push(node.event(TraceAction::PrunedNonImproving, ik));
        return;
    }
    let seq = s.next_seq;
    s.next_seq += 1;
    s.queue.push(HeapEntry { key: heap_key(cfg.exploration, &node, seq), node });
}

/// One worker: pop, score or prune or expand, repeat. All workers run this
/// same loop; with one worker it simply runs inline.
fn worker(state: &Mutex<SearchState>, cv: &Condvar, cfg: &BBConfig, sampler: &dyn MisSampler) {
    let mut s = state.lock().expect("search lock");
    loop {
        if s.error.is_some() {
            cv.notify_all();
            return;
        }
        let entry = match s.queue.pop() {
            Some(e) => e,
            None => {
                if s.active == 0 {
                    cv.notify_all();
                    return;
                }
                s = cv.wait(s).expect("search lock");
                continue;
            }
        };
        let node = entry.node;

        // Leaves are outcomes, not expansions: score and move on. They stay
        // free even after the budget trips, so queued completions are never
        // thrown away.
        if node.subgraph.m() == 0 {
            s.leaves += 1;
            match leaf_coloring(&node) {
                Ok(c) => {
                    if c.k() < s.incumbent.k() {
                        s.incumbent = c;
                    }
                }
                Err(e) => {
                    s.error = Some(e);
                    cv.notify_all();
                    return;
                }
            }
            let ik = s.incumbent.k();
            s.trace.push(node.event(TraceAction::Leaf, ik));
            continue;
        }

        if cfg.prune_non_improving && node.lb >= s.incumbent.k() {
            s.prunes.non_improving += 1;
            let ik = s.incumbent.k();
            s.trace.push(node.event(TraceAction::PrunedNonImproving, ik));
            continue;
        }

        if s.budget_exhausted {
            continue; // draining: discard nodes that would need sampling
        }
        if let Some(budget) = cfg.node_budget {
            if s.explored >= budget {
                s.budget_exhausted = true;
                cv.notify_all();
                continue;
            }
        }

        s.explored += 1;
        s.active += 1;
        let ik = s.incumbent.k();
        s.trace.push(node.event(TraceAction::Sampled, ik));
        drop(s);

        let expansion = expand(&node, cfg, sampler);

        s = state.lock().expect("search lock");
        s.active -= 1;
        match expansion {
            Err(e) => {
                s.error = Some(e);
                cv.notify_all();
                return;
            }
            Ok(exp) => {
                s.shots += exp.shots;
                s.prunes.unfeasible += exp.unfeasible;
                for draft in exp.children {
                    admit_child(&mut s, cfg, node.id, draft);
                }
                cv.notify_all();
            }
        }
    }
}

/// Branch-and-bound coloring over sampled maximal independent sets.
///
/// The incumbent starts at the everyone-alone completion of the whole graph
/// and only improves when a leaf beats it, so the returned coloring is always
/// proper and the reported `k` never increases during a run.
pub fn bbq_mis(
    g: &Graph,
    sampler: &dyn MisSampler,
    cfg: &BBConfig,
) -> Result<(Coloring, SolveReport), EngineError> {
    if g.n() == 0 {
        return Err(EngineError::EmptyGraph);
    }
    let started = Instant::now();

    let (lb, ub, priority) = node_bounds(g, 0, cfg.lb_rounding);
    let root = Node {
        id: 0,
        parent: None,
        subgraph: g.clone(),
        inherited: Vec::new(),
        lb,
        ub,
        priority,
    };
    let incumbent = worst_case_completion(&[], g)?;

    let mut init = SearchState {
        queue: BinaryHeap::new(),
        incumbent,
        seen: HashMap::new(),
        explored: 0,
        leaves: 0,
        shots: 0,
        prunes: PruneCounts::default(),
        next_id: 1,
        next_seq: 1,
        active: 0,
        budget_exhausted: false,
        error: None,
        trace: Vec::new(),
    };
    init.seen.insert(g.fingerprint(), 0);
    let ik = init.incumbent.k();
    init.trace.push(root.event(TraceAction::Created, ik));
    if cfg.prune_non_improving && root.lb >= ik {
        // The bracket already certifies the trivial completion is optimal.
        init.prunes.non_improving += 1;
        init.trace.push(root.event(TraceAction::PrunedNonImproving, ik));
    } else {
        init.queue.push(HeapEntry { key: heap_key(cfg.exploration, &root, 0), node: root });
    }

    let state = Mutex::new(init);
    let cv = Condvar::new();
    let workers = cfg.parallelism.max(1);
    if workers == 1 {
        worker(&state, &cv, cfg, sampler);
    } else {
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| worker(&state, &cv, cfg, sampler));
            }
        });
    }

    let mut s = state.into_inner().expect("search lock");
    if let Some(e) = s.error.take() {
        return Err(e);
    }
    let terminated_by = if s.budget_exhausted {
        TerminatedBy::NodeBudget
    } else {
        TerminatedBy::Optimality
    };
    let report = SolveReport {
        best: s.incumbent.clone(),
        nodes_explored: s.explored,
        nodes_pruned: s.prunes,
        leaves: s.leaves,
        shots_consumed: s.shots,
        wall_time: started.elapsed().as_secs_f64(),
        terminated_by,
        trace: s.trace,
    };
    Ok((s.incumbent, report))
}
