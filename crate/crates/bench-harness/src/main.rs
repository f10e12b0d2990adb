//! `gcbench` — generate benchmark datasets, run the solver sweep, inspect
//! single runs, estimate hardware shot costs, and summarize results tables.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bench_harness::{
    generate_dataset, gnp, parse_csv, render_budget, render_csv, render_series, render_summary,
    run_bench, series, shot_budget, solve_one, summarize, BenchConfig, DatasetSpec, HarnessError,
    Instance, InstanceFile, SamplerKind, SolverKind, DEFAULT_REPETITION_RATE_HZ,
};
use clap::{Args, Parser, Subcommand};
use rydberg_emulator::QaoaConfig;
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "gcbench", about = "Graph-coloring solver benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Solver × sampler grid, loadable from a JSON file for `bench --matrix`.
#[derive(Deserialize)]
#[serde(default)]
struct Matrix {
    solvers: Vec<SolverKind>,
    samplers: Vec<SamplerKind>,
}

impl Default for Matrix {
    fn default() -> Self {
        let d = BenchConfig::default();
        Self { solvers: d.solvers, samplers: d.samplers }
    }
}

/// Run settings shared by `bench` and `solve`, loadable from a JSON file via
/// `--config`.
#[derive(Deserialize)]
#[serde(default)]
struct RunSettings {
    shots: u64,
    /// 0 lifts the branch-and-bound node budget.
    node_budget: u64,
    workers: usize,
    qaoa: QaoaConfig,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self { shots: 4096, node_budget: 50, workers: 1, qaoa: QaoaConfig::default() }
    }
}

impl RunSettings {
    fn apply(&self, cfg: &mut BenchConfig) {
        cfg.shots = self.shots;
        cfg.node_budget = if self.node_budget == 0 { None } else { Some(self.node_budget) };
        cfg.workers = self.workers.max(1);
        cfg.qaoa = self.qaoa.clone();
    }
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Run settings as a JSON file ({"shots":…,"node_budget":…,"workers":…,"qaoa":{…}}).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Shots per sampler call (overrides --config).
    #[arg(long)]
    shots: Option<u64>,
    /// Node budget for the branch-and-bound solver; 0 lifts it (overrides --config).
    #[arg(long)]
    node_budget: Option<u64>,
    /// Worker threads inside one branch-and-bound search (overrides --config).
    #[arg(long)]
    workers: Option<usize>,
    /// Base seed for all runs.
    #[arg(long, default_value_t = 77)]
    seed: u64,
}

impl RunArgs {
    fn apply(&self, cfg: &mut BenchConfig) -> Result<(), HarnessError> {
        let mut settings = RunSettings::default();
        if let Some(path) = &self.config {
            settings = serde_json::from_str(&fs::read_to_string(path)?)?;
        }
        if let Some(shots) = self.shots {
            settings.shots = shots;
        }
        if let Some(budget) = self.node_budget {
            settings.node_budget = budget;
        }
        if let Some(workers) = self.workers {
            settings.workers = workers;
        }
        settings.apply(cfg);
        cfg.master_seed = self.seed;
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate the benchmark dataset and write it as JSON.
    Gen {
        /// Dataset geometry as a JSON file; defaults reproduce the standard
        /// 120-instance benchmark.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Output location: a .json file, or a directory that will receive
        /// instances.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the solver × sampler sweep and write a results table.
    Bench {
        /// Dataset from `gen` (file or directory); generated in memory with
        /// default geometry when omitted.
        #[arg(long)]
        dataset: Option<PathBuf>,
        /// Solver × sampler grid as a JSON file.
        #[arg(long, conflicts_with_all = ["solvers", "samplers"])]
        matrix: Option<PathBuf>,
        /// Solvers to run, comma-separated (bbq, greedy, exact).
        #[arg(long, value_delimiter = ',')]
        solvers: Option<Vec<SolverKind>>,
        /// Samplers the heuristics draw from (exact, rgreedy, qaoa).
        #[arg(long, value_delimiter = ',')]
        samplers: Option<Vec<SamplerKind>>,
        /// Instances processed concurrently.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[command(flatten)]
        run: RunArgs,
        /// Results CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Also write the per-instance comparison series here.
        #[arg(long)]
        series: Option<PathBuf>,
        /// Write 0.0 in every wall-time column (byte-reproducible output).
        #[arg(long)]
        zero_timing: bool,
        /// Abort on the first failed run instead of recording an error row.
        #[arg(long)]
        strict: bool,
    },
    /// Solve one instance and print the row plus the full search report.
    Solve {
        /// Instance file (same JSON shape `gen` emits per instance).
        #[arg(long, conflicts_with = "gnp")]
        graph: Option<PathBuf>,
        /// Random graph instead: "n,p,seed", e.g. "12,0.4,7".
        #[arg(long)]
        gnp: Option<String>,
        #[arg(long, default_value = "bbq")]
        solver: SolverKind,
        #[arg(long, default_value = "exact")]
        sampler: SamplerKind,
        #[command(flatten)]
        run: RunArgs,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate hardware measurement cost for a node budget.
    Budget {
        /// Solve report JSON (from `solve --out`); its explored-node count
        /// is the budgeted quantity.
        #[arg(long, conflicts_with = "nodes")]
        report: Option<PathBuf>,
        /// What-if projection for this many nodes instead of a report.
        #[arg(long)]
        nodes: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_REPETITION_RATE_HZ)]
        rate_hz: f64,
        /// Variational settings as a JSON file.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Summarize a results table written by `bench`.
    Report {
        /// Results CSV path.
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the machine-readable summary JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the per-instance comparison series CSV here.
        #[arg(long)]
        series: Option<PathBuf>,
    },
}

fn dataset_path(path: &Path) -> PathBuf {
    if path.is_dir() {
        path.join("instances.json")
    } else {
        path.to_path_buf()
    }
}

fn load_dataset(path: Option<&PathBuf>) -> Result<Vec<Instance>, HarnessError> {
    match path {
        Some(path) => {
            let text = fs::read_to_string(dataset_path(path))?;
            let files: Vec<InstanceFile> = serde_json::from_str(&text)?;
            files.into_iter().map(Instance::try_from).collect()
        }
        None => generate_dataset(&DatasetSpec::default()),
    }
}

fn parse_gnp(text: &str) -> Result<Instance, HarnessError> {
    let parts: Vec<&str> = text.split(',').collect();
    let bad = || HarnessError::BadArg(format!("--gnp expects \"n,p,seed\", got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let n: usize = parts[0].trim().parse().map_err(|_| bad())?;
    let p: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let seed: u64 = parts[2].trim().parse().map_err(|_| bad())?;
    Ok(Instance {
        id: format!("gnp_n{n:02}_p{p}_s{seed}"),
        seed,
        radius: f64::NAN,
        graph: gnp(n, p, seed)?,
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Gen { spec, out } => {
            let spec: DatasetSpec = match spec {
                Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
                None => DatasetSpec::default(),
            };
            let instances = generate_dataset(&spec)?;
            let files: Vec<InstanceFile> = instances.iter().map(InstanceFile::from).collect();
            let target = if out.extension().is_some() {
                out.clone()
            } else {
                fs::create_dir_all(&out)?;
                out.join("instances.json")
            };
            fs::write(&target, serde_json::to_string_pretty(&files)?)?;
            println!("wrote {} instances to {}", files.len(), target.display());
        }
        Command::Bench {
            dataset,
            matrix,
            solvers,
            samplers,
            parallel,
            run,
            out,
            series: series_out,
            zero_timing,
            strict,
        } => {
            let instances = load_dataset(dataset.as_ref())?;
            let grid: Matrix = match matrix {
                Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
                None => Matrix::default(),
            };
            let mut cfg = BenchConfig {
                solvers: solvers.unwrap_or(grid.solvers),
                samplers: samplers.unwrap_or(grid.samplers),
                threads: parallel.max(1),
                zero_timing,
                strict,
                ..BenchConfig::default()
            };
            run.apply(&mut cfg)?;
            let rows = run_bench(&instances, &cfg)?;
            fs::write(&out, render_csv(&rows))?;
            println!("wrote {} rows to {}", rows.len(), out.display());
            if let Some(path) = series_out {
                fs::write(&path, render_series(&series(&rows)))?;
                println!("wrote series to {}", path.display());
            }
            print!("{}", render_summary(&summarize(&rows)));
        }
        Command::Solve { graph, gnp: gnp_arg, solver, sampler, run, out } => {
            let instance = match (&graph, &gnp_arg) {
                (Some(path), None) => {
                    let file: InstanceFile = serde_json::from_str(&fs::read_to_string(path)?)?;
                    Instance::try_from(file)?
                }
                (None, Some(text)) => parse_gnp(text)?,
                _ => {
                    return Err(HarnessError::BadArg(
                        "pass exactly one of --graph or --gnp".to_string(),
                    ))
                }
            };
            let mut cfg = BenchConfig::default();
            run.apply(&mut cfg)?;
            let output = solve_one(&instance, 0, solver, sampler, &cfg)?;
            let json = serde_json::to_string_pretty(&output)?;
            match out {
                Some(path) => {
                    fs::write(&path, &json)?;
                    println!("wrote report to {}", path.display());
                }
                None => println!("{json}"),
            }
        }
        Command::Budget { report, nodes, rate_hz, config } => {
            let nodes = match (report, nodes) {
                (Some(path), None) => {
                    // Accepts a full solve output or a bare row object.
                    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path)?)?;
                    v.pointer("/row/nodes_explored")
                        .or_else(|| v.pointer("/nodes_explored"))
                        .and_then(|x| x.as_u64())
                        .ok_or_else(|| {
                            HarnessError::BadArg(
                                "report JSON carries no nodes_explored field".to_string(),
                            )
                        })?
                }
                (None, Some(n)) => n,
                _ => {
                    return Err(HarnessError::BadArg(
                        "pass exactly one of --report or --nodes".to_string(),
                    ))
                }
            };
            let cfg = match config {
                Some(path) => serde_json::from_str::<QaoaConfig>(&fs::read_to_string(path)?)?,
                None => QaoaConfig::default(),
            };
            print!("{}", render_budget(&shot_budget(nodes, &cfg, rate_hz)));
        }
        Command::Report { input, out, series: series_out } => {
            let rows = parse_csv(&fs::read_to_string(&input)?)?;
            let summaries = summarize(&rows);
            if let Some(path) = out {
                fs::write(&path, serde_json::to_string_pretty(&summaries)?)?;
                println!("wrote summary to {}", path.display());
            }
            if let Some(path) = series_out {
                fs::write(&path, render_series(&series(&rows)))?;
                println!("wrote series to {}", path.display());
            }
            print!("{}", render_summary(&summaries));
        }
    }
    Ok(())
}
