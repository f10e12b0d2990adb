use std::time::Instant;

use graph_core::{Graph, VertexSet};
use mis_sampling::{MisSampler, RandomGreedySampler};

use crate::report::{PruneCounts, SolveReport, TerminatedBy};
use crate::{sample_seed, Coloring, EngineError};

/// Extends an independent set of `g` to a maximal one, admitting eligible
/// vertices in ascending label order.
pub(crate) fn augment_to_maximal(g: &Graph, set: VertexSet) -> VertexSet {
    let mut acc = set;
    for &l in g.labels() {
        if !acc.contains(l) && g.neighbors(l).expect("own label").bits() & acc.bits() == 0 {
            acc = acc.with(l);
        }
    }
    acc
}

/// Picks the color class for one round: the most frequent histogram outcome
/// that is independent in `g`, grown to maximality. Falls back to a
/// single-shot random greedy draw when no outcome qualifies.
fn next_class(
    g: &Graph,
    sampler: &dyn MisSampler,
    shots: u64,
    seed: u64,
    shots_consumed: &mut u64,
) -> Result<VertexSet, EngineError> {
    let hist = sampler.sample(g, shots, sample_seed(seed, g.fingerprint()))?;
    *shots_consumed += hist.shots();
    for (set, _count) in hist.by_frequency() {
        if matches!(g.is_independent(set), Ok(true)) {
            return Ok(augment_to_maximal(g, set));
        }
    }
    let rescue = RandomGreedySampler.sample(g, 1, sample_seed(seed, !g.fingerprint()))?;
    *shots_consumed += rescue.shots();
    let (set, _) = rescue.by_frequency()[0];
    Ok(set)
}

/// Iterated MIS removal: repeatedly samples the current residual graph, takes
/// the best available independent outcome as the next color class, and
/// recurses on the rest. One sampler call per color; no backtracking.
pub fn greedy_it_mis(
    g: &Graph,
    sampler: &dyn MisSampler,
    shots: u64,
    seed: u64,
) -> Result<(Coloring, SolveReport), EngineError> {
    if g.n() == 0 {
        return Err(EngineError::EmptyGraph);
    }
    let started = Instant::now();
    let mut current = g.clone();
    let mut classes: Vec<VertexSet> = Vec::new();
    let mut sampler_calls = 0u64;
    let mut shots_consumed = 0u64;

    while current.n() > 0 {
        if current.m() == 0 {
            classes.push(current.vertex_set());
            break;
        }
        let class = next_class(&current, sampler, shots, seed, &mut shots_consumed)?;
        sampler_calls += 1;
        current = current.induced_remove(class)?;
        classes.push(class);
    }

    let best = Coloring::new(classes)?;
    let report = SolveReport {
        best: best.clone(),
        nodes_explored: sampler_calls,
        nodes_pruned: PruneCounts::default(),
        leaves: 0,
        shots_consumed,
        wall_time: started.elapsed().as_secs_f64(),
        terminated_by: TerminatedBy::Optimality,
        trace: Vec::new(),
    };
    Ok((best, report))
}
