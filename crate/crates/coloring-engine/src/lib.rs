//! Graph-coloring solvers built on maximal-independent-set sampling.
//!
//! Two solvers share one idea — peel off maximal independent sets as color
//! classes — but spend their samples differently. [`greedy_it_mis`] commits
//! to the best outcome of one histogram per color and never reconsiders.
//! [`bbq_mis`] keeps a priority queue of partial colorings, brackets each
//! with spectral and degree bounds, and prunes what cannot improve, so extra
//! samples buy better colorings. [`exact_chromatic`] is the brute-force
//! referee for both on small instances.

mod bb;
mod coloring;
mod exact;
mod greedy;
mod report;

pub use bb::{bbq_mis, BBConfig, ExplorationPolicy};
pub use coloring::{verify_coloring, worst_case_completion, Coloring};
pub use exact::{exact_chromatic, optimal_coloring_has_maximal_class, EXACT_MAX_VERTICES};
pub use greedy::greedy_it_mis;
pub use report::{PruneCounts, SolveReport, TerminatedBy, TraceAction, TraceEvent};

use graph_core::GraphError;
use mis_sampling::SampleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("color class {index} is empty")]
    EmptyClass { index: usize },
    #[error("color class {index} overlaps an earlier class")]
    OverlappingClasses { index: usize },
    #[error("graph has {n} vertices but this routine handles at most {max}")]
    TooLarge { n: usize, max: usize },
    #[error("graph has no vertices to color")]
    EmptyGraph,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sample(#[from] SampleError),
}

/// Derives the sampler seed for one residual graph. A pure function of the
/// master seed and the graph's vertex fingerprint, so a node draws the same
/// histogram no matter when, where, or on which thread it is expanded — and
/// both solvers see identical samples for identical residual graphs.
pub(crate) fn sample_seed(master: u64, fingerprint: u64) -> u64 {
    mis_sampling::seed::mix(master, fingerprint)
}
