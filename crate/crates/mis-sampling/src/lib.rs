//! Maximal-independent-set sampling behind one deterministic contract.
//!
//! Solvers branch on maximal independent sets (mIS) but never care where they
//! come from: a [`MisSampler`] turns `(graph, shots, seed)` into a
//! [`SampleHistogram`] and must be a pure function of those three arguments.
//! This crate ships the exhaustive enumerator plus two classical backends —
//! the exact multinomial sampler over all mISs and a randomized greedy
//! sampler. The pulse-level emulator backend lives in its own crate and
//! plugs into the same trait.

mod enumerate;
mod histogram;
mod samplers;
pub mod seed;

pub use enumerate::enumerate_mis;
pub use histogram::{HistogramMeta, SampleHistogram};
pub use samplers::{extract_candidates, ExactMisSampler, MisWeighting, RandomGreedySampler};

use graph_core::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("shots must be ≥ 1")]
    ZeroShots,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("histogram is inconsistent: {0}")]
    Histogram(String),
    #[error("histogram was sampled from a different graph: bitstring {bits:#b} not within labels")]
    ForeignSupport { bits: u64 },
    #[error("sampler backend failed: {0}")]
    Backend(String),
}

/// A source of maximal-independent-set samples.
///
/// Implementations must be deterministic — equal `(g, shots, seed)` gives an
/// identical histogram — and stateless, so one instance can serve many
/// threads (`Send + Sync`).
pub trait MisSampler: Send + Sync {
    /// Short stable identifier, used in histogram metadata and CSV columns.
    fn name(&self) -> &str;

    /// Draws `shots ≥ 1` samples from `g`'s label universe.
    fn sample(&self, g: &Graph, shots: u64, seed: u64) -> Result<SampleHistogram, SampleError>;
}
