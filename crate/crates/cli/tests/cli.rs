//! End-to-end runs of the `kronecker` binary.

use std::process::{Command, Output};

use kronecker_core::report::render_real;
use kronecker_core::{sweep, AlphaField, AlphaSpec, GeneratorSpec, PrecisionContext};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kronecker"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn golden_gaps_at_five() {
    let v = json(&["gaps", "--alpha", "golden", "--n", "5"]);
    let mult: Vec<u64> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["multiplicity"].as_u64().unwrap())
        .collect();
    assert_eq!(mult, [2, 3, 0]);
    assert!(v["checks"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn analyze_examples() {
    assert_eq!(json(&["analyze", "--alpha", "golden", "--n", "5"])["rho_n"], "2");
    assert_eq!(json(&["analyze", "--gen", "vdc", "--base", "2", "--n", "4"])["rho_n"], "2");
}

#[test]
fn classify_examples() {
    assert_eq!(json(&["classify", "--alpha", "golden"])["badly_approximable"], "yes");
    assert_eq!(json(&["classify", "--alpha", "rat:3/8"])["badly_approximable"], "no");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["analyze", "--alpha", "nonsense", "--n", "4"]), 1);
    assert_eq!(code(&["gaps", "--alpha", "rat:1/3", "--n", "5"]), 2);
    assert_eq!(code(&["analyze", "--alpha", "rat:1/3", "--n", "4"]), 4);
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--alpha", "golden", "--n-range", "2..200", "--digits", "30"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_csv_round_trips_to_library_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let status = run(&[
        "sweep", "--alpha", "quad:-1,2,1", "--n-range", "2..=120", "--digits", "25",
        "--out", path.to_str().unwrap(),
    ])
    .status;
    assert!(status.success());

    let alpha: AlphaSpec = "quad:-1,2,1".parse().unwrap();
    let ctx = PrecisionContext::default();
    let field = AlphaField::new(&alpha, ctx.clone()).unwrap();
    let rows = sweep(&GeneratorSpec::Kronecker(alpha), 2..=120, &ctx).unwrap();
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let records: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(&rows) {
        assert_eq!(rec[0].parse::<usize>().unwrap(), row.metrics.n);
        assert_eq!(rec[1], render_real(Some(&field), &row.metrics.fill, 25).unwrap());
        assert_eq!(rec[2], render_real(Some(&field), &row.metrics.separation, 25).unwrap());
    }
}

#[test]
fn points_json_for_greedy() {
    let v = json(&["points", "--gen", "greedy", "--n", "7", "--format", "json"]);
    let pts: Vec<&str> = v["points"].as_array().unwrap().iter().map(|p| p.as_str().unwrap()).collect();
    assert_eq!(pts, ["0.5", "0", "1", "0.25", "0.75", "0.125", "0.375"]);
    assert_eq!(v["exact"], true);
}
