//! Benchmark harness for the graph-coloring solver suite: reproducible
//! unit-disk datasets, the solver × sampler sweep, results-table I/O,
//! summaries, and hardware shot accounting. The `gcbench` binary is a thin
//! CLI over this library.

mod budget;
mod csvio;
mod dataset;
mod report;
mod run;

pub use budget::{render_budget, shot_budget, ShotBudgetReport, DEFAULT_REPETITION_RATE_HZ};
pub use csvio::{parse_csv, render_csv, CSV_HEADER};
pub use dataset::{generate_dataset, generate_instance, gnp, DatasetSpec, Instance, InstanceFile};
pub use report::{render_series, render_summary, series, summarize, SeriesRow, SolverSummary};
pub use run::{
    chromatic_number, make_sampler, run_bench, solve_one, BenchConfig, BenchRow, SamplerKind,
    SolveOutput, SolverKind,
};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Engine(#[from] coloring_engine::EngineError),
    #[error(transparent)]
    Graph(#[from] graph_core::GraphError),
    #[error(transparent)]
    Sample(#[from] mis_sampling::SampleError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("results table, line {line}: {msg}")]
    BadCsv { line: usize, msg: String },
    #[error("instance file {id:?} does not match its own coordinates")]
    CorruptInstance { id: String },
    #[error("no instance with id {0:?} in the dataset")]
    UnknownId(String),
    #[error("{0}")]
    BadArg(String),
    #[error("could not place a connected instance for n = {n}, index = {index}")]
    GenerationFailed { n: usize, index: usize },
    #[error("{solver} returned an invalid coloring on {instance}")]
    BadColoring { instance: String, solver: String },
}
