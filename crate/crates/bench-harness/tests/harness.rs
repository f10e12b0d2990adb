//! End-to-end checks of the `gcbench` binary: the gen → bench → report
//! pipeline round-trips through files, output is byte-deterministic under
//! --zero-timing, and the single-run/budget paths produce usable JSON.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn gcbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcbench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("gcbench_{tag}_{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Self(dir)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn write_small_spec(dir: &TempDir) -> PathBuf {
    let spec = dir.path("spec.json");
    fs::write(&spec, r#"{"min_n": 6, "max_n": 7, "per_size": 2}"#).unwrap();
    spec
}

#[test]
fn gen_bench_report_pipeline_roundtrips() {
    let dir = TempDir::new("pipeline");
    let spec = write_small_spec(&dir);

    let out = ok(&gcbench(&[
        "gen",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        dir.0.to_str().unwrap(),
    ]));
    assert!(out.contains("wrote 4 instances"), "{out}");
    assert!(dir.path("instances.json").exists());

    let results = dir.path("results.csv");
    let series = dir.path("series.csv");
    let out = ok(&gcbench(&[
        "bench",
        "--dataset",
        dir.0.to_str().unwrap(),
        "--shots",
        "256",
        "--out",
        results.to_str().unwrap(),
        "--series",
        series.to_str().unwrap(),
    ]));
    assert!(out.contains("wrote 20 rows"), "{out}");

    let csv = fs::read_to_string(&results).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,n,m,solver,sampler,k,chi,nodes_explored,shots,wall_s,terminated_by,seed"
    );
    assert_eq!(lines.count(), 20);
    // 4 instances × (2 solvers × 2 samplers + 1 exact row).
    assert_eq!(csv.matches(",bbq,").count(), 8);
    assert_eq!(csv.matches(",exact,-,").count(), 4);

    let series_text = fs::read_to_string(&series).unwrap();
    assert!(series_text.starts_with("instance,n,chi,greedy_k,bbq_k\n"));
    assert_eq!(series_text.lines().count(), 5);

    let summary = dir.path("summary.json");
    let out = ok(&gcbench(&[
        "report",
        "--in",
        results.to_str().unwrap(),
        "--out",
        summary.to_str().unwrap(),
    ]));
    assert!(out.contains("optimal"), "summary table missing: {out}");
    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 5, "one summary per solver × sampler cell");
    for row in rows {
        assert!(row["optimal_rate"].as_f64().unwrap() <= 1.0);
        assert!(row["runs"].as_u64().unwrap() == 4);
        assert!(row.get("excess_counts").is_some());
        assert!(row.get("nodes_explored_counts").is_some());
    }
}

#[test]
fn bench_output_is_byte_deterministic_with_zero_timing() {
    let dir = TempDir::new("determinism");
    let spec = write_small_spec(&dir);
    ok(&gcbench(&["gen", "--spec", spec.to_str().unwrap(), "--out", dir.0.to_str().unwrap()]));

    let run = |name: &str, parallel: &str| -> Vec<u8> {
        let out = dir.path(name);
        ok(&gcbench(&[
            "bench",
            "--dataset",
            dir.0.to_str().unwrap(),
            "--shots",
            "256",
            "--parallel",
            parallel,
            "--zero-timing",
            "--out",
            out.to_str().unwrap(),
        ]));
        fs::read(&out).unwrap()
    };

    let first = run("a.csv", "1");
    let second = run("b.csv", "1");
    assert_eq!(first, second, "same seed must give identical bytes");
    let threaded = run("c.csv", "4");
    assert_eq!(first, threaded, "parallelism must not leak into the table");
}

#[test]
fn solve_writes_a_report_budget_can_price() {
    let dir = TempDir::new("solve");
    let report = dir.path("report.json");

    let out = ok(&gcbench(&[
        "solve",
        "--gnp",
        "9,0.4,7",
        "--solver",
        "bbq",
        "--sampler",
        "exact",
        "--shots",
        "128",
        "--out",
        report.to_str().unwrap(),
    ]));
    assert!(out.contains("wrote report"), "{out}");

    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed["row"]["solver"], "bbq");
    assert!(parsed["row"]["k"].as_u64().unwrap() >= 2);
    assert_eq!(parsed["row"]["k"], parsed["row"]["chi"], "trivial instance solves to optimal");
    assert!(parsed["report"]["nodes_explored"].as_u64().unwrap() >= 1);
    assert!(parsed["report"]["trace"].is_array());

    let budget_out = ok(&gcbench(&["budget", "--report", report.to_str().unwrap()]));
    assert!(budget_out.contains("total shots"), "{budget_out}");
    assert!(budget_out.contains("5 Hz"), "{budget_out}");

    // What-if projection from a node count alone: 50 nodes × 5100 shots.
    let fifty = ok(&gcbench(&["budget", "--nodes", "50"]));
    assert!(fifty.contains("255000"), "{fifty}");
}

#[test]
fn matrix_file_controls_the_sweep_grid() {
    let dir = TempDir::new("matrix");
    let spec = write_small_spec(&dir);
    ok(&gcbench(&["gen", "--spec", spec.to_str().unwrap(), "--out", dir.0.to_str().unwrap()]));

    let matrix = dir.path("matrix.json");
    fs::write(&matrix, r#"{"solvers": ["bbq"], "samplers": ["rgreedy"]}"#).unwrap();
    let results = dir.path("results.csv");
    ok(&gcbench(&[
        "bench",
        "--dataset",
        dir.0.to_str().unwrap(),
        "--matrix",
        matrix.to_str().unwrap(),
        "--shots",
        "128",
        "--out",
        results.to_str().unwrap(),
    ]));
    let csv = fs::read_to_string(&results).unwrap();
    assert_eq!(csv.lines().count(), 5, "header + one bbq×rgreedy row per instance");
    for line in csv.lines().skip(1) {
        assert!(line.contains(",bbq,rgreedy,"), "{line}");
    }
}

#[test]
fn solve_rejects_contradictory_inputs() {
    let out = gcbench(&["solve", "--solver", "bbq"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--graph") || err.contains("--gnp"), "{err}");
}

#[test]
fn gen_accepts_a_file_target_too() {
    let dir = TempDir::new("genfile");
    let spec = write_small_spec(&dir);
    let target = dir.path("custom.json");
    ok(&gcbench(&["gen", "--spec", spec.to_str().unwrap(), "--out", target.to_str().unwrap()]));
    assert!(target.exists());
    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 4);

    // A bench can consume the explicit file path directly.
    let results = dir.path("r.csv");
    ok(&gcbench(&[
        "bench",
        "--dataset",
        target.to_str().unwrap(),
        "--solvers",
        "greedy",
        "--samplers",
        "exact",
        "--shots",
        "64",
        "--out",
        results.to_str().unwrap(),
    ]));
    assert_eq!(fs::read_to_string(&results).unwrap().lines().count(), 5);
}
