use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pauli-lab")).args(args).env("PAULI_LAB_THREADS", "2").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.json");
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let errors: Vec<String> = schema().iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{v:#}");
}

#[test]
fn counts() {
    for (n, k, want) in [("2", "2", "15"), ("4", "4", "2295"), ("1", "0", "1")] {
        let v = json(&["count", "--n", n, "--k", k]);
        assert_eq!(v["closed_form"], want);
        assert_eq!(v["enumerated"], want);
        assert_valid(&v);
    }
    let v = json(&["count", "--n", "12", "--k", "6"]);
    assert_eq!(v["enumerated"], Value::Null);
}

#[test]
fn spectra_examples() {
    let v = json(&["spectra", "--graph", "gw", "--n", "4"]);
    assert_eq!(v["max"], 56.0);
    assert_eq!(v["lambda"], 14.0);
    assert_valid(&v);
    let v = json(&["spectra", "--graph", "gwp", "--n", "2"]);
    let spec: Vec<(f64, u64)> = v["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_f64().unwrap(), e["multiplicity"].as_u64().unwrap()))
        .collect();
    assert_eq!(spec, vec![(2.0, 1), (-1.0, 2)]);
    assert_valid(&v);
    for g in ["b", "sn"] {
        let n = if g == "b" { "3" } else { "2" };
        assert_valid(&json(&["spectra", "--graph", g, "--n", n]));
    }
}

#[test]
fn pval_writes_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pval.json");
    let status = run(&["pval", "--n", "2", "--out", out.to_str().unwrap()]).status;
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["optimum"], "4/5");
    assert_eq!(v["certificate_valid"], true);
    assert_valid(&v);
    let cert = Path::new(v["certificate_path"].as_str().unwrap());
    let sys = pauli_core::MaximalSystem::new(2).unwrap();
    let f = pauli_lab::formats::read_partial(&sys, std::io::BufReader::new(std::fs::File::open(cert).unwrap())).unwrap();
    assert_eq!(f.defined(), 12);
}

#[test]
fn cval_accepts_scientific_budget() {
    let v = json(&["cval", "--n", "2", "--budget", "2e9"]);
    assert_eq!(v["budget"], 2_000_000_000u64);
    assert_eq!(v["optimum"], "2/45");
    assert_valid(&v);
    assert!(!run(&["cval", "--budget", "1.5"]).status.success());
}

#[test]
fn games() {
    let v = json(&["game", "--name", "z1", "--strategy", "quantum", "--mode", "exact"]);
    assert_eq!(v["value"], 1.0);
    assert_valid(&v);
    let v = json(&["game", "--name", "z1", "--strategy", "synchronous"]);
    assert_eq!(v["exact"], "13/15");
    assert_eq!(v["search"]["certificate_valid"], true);
    assert_valid(&v);
    let v = json(&["game", "--name", "agreement", "--strategy", "random", "--mode", "mc", "--samples", "20000"]);
    assert!(v["ci_low"].as_f64().unwrap() <= 0.5 && 0.5 <= v["ci_high"].as_f64().unwrap());
    assert_valid(&v);
}

#[test]
fn walks_report() {
    let v = json(&["walks", "--n", "2", "--k", "1"]);
    assert_eq!(v["pval"], "4/5");
    assert_eq!(v["theta"], 15);
    assert_valid(&v);
}

#[test]
fn verify_suites() {
    let v = json(&["verify", "--suite", "phases"]);
    assert_eq!(v["passed"], true);
    assert_valid(&v);
    let v = json(&["verify", "--suite", "all", "--n-max", "1"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 11);
    assert_valid(&v);
}

#[test]
fn output_is_deterministic() {
    let args = ["game", "--name", "z1", "--strategy", "random", "--mode", "mc", "--samples", "5000", "--seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn enumerate_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("l22.txt");
    let v = json(&["enumerate", "--n", "2", "--k", "2", "--out", fixture.to_str().unwrap()]);
    assert_eq!(v["count"], 15);
    assert_valid(&v);
    let (n, subs) = pauli_lab::formats::read_subspaces(std::io::BufReader::new(std::fs::File::open(&fixture).unwrap())).unwrap();
    assert_eq!((n, subs.len()), (2, 15));

    let out = run(&["export", "--graph", "gw", "--n", "2", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let adj = std::fs::read_to_string(dir.path().join("gw-n2.adj")).unwrap();
    let g = pauli_lab::formats::parse_adjacency(&adj).unwrap();
    assert_eq!(g.len(), 3);
    assert!(g.iter().all(|nb| nb.len() == 2));
    assert!(dir.path().join("gw-n2.payload").exists());
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(run(&["spectra", "--graph", "petersen"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--format", "xml"]).status.code(), Some(2));
}
