//! Bitset-backed simple graphs over a fixed universe of at most 64 labels.
//!
//! Vertices carry *labels*: indices into the original (root) graph that stay
//! stable when induced subgraphs are taken. All set-valued quantities —
//! neighborhoods, independent sets, color classes, subgraph fingerprints —
//! are `u64` bitmasks indexed by label, so set algebra is a handful of word
//! operations regardless of how deep a subgraph chain goes.

mod graph;
mod vertex_set;

pub use graph::{unit_disk_graph, Graph, MAX_VERTICES};
pub use vertex_set::VertexSet;

use thiserror::Error;

/// Errors raised by graph construction and label-checked set queries.
#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("graph would have {0} vertices; the bitset representation holds at most {max}", max = MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("label {0} is not a vertex of this graph")]
    UnknownLabel(usize),
    #[error("edge ({0}, {1}) is invalid: self-loops are not allowed")]
    SelfLoop(usize, usize),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("points {0} and {1} coincide; unit-disk construction needs pairwise distinct points")]
    DuplicatePoint(usize, usize),
    #[error("unit-disk radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("coords must have one entry per vertex ({expected}), got {got}")]
    CoordsLengthMismatch { expected: usize, got: usize },
    #[error("graph JSON is inconsistent: {0}")]
    MalformedJson(String),
}
