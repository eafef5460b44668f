//! Black-box tests of the `hamlog` binary: argument handling, exit codes,
//! both output formats, and run-to-run determinism of JSON reports.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hamlog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamlog"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hamlog-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn analyze_cnot_text() {
    let out = hamlog(&["analyze", "cnot"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("gate: cnot"));
    assert!(text.contains("order: 2"));
    assert!(text.contains("t = 0.7853981634"));
    // All four table rows of the known generator appear.
    for row in ["II", "IX", "ZI", "ZX"] {
        assert!(text.contains(row), "missing {row} in:\n{text}");
    }
}

#[test]
fn analyze_toffoli_json() {
    let out = hamlog(&["analyze", "toffoli", "--output", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["config"]["gate"], "toffoli");
    assert_eq!(v["result"]["order"], 3);
    assert_eq!(v["result"]["qubits"], 3);
    let pauli = v["result"]["paper"]["pauli"].as_array().unwrap();
    assert_eq!(pauli.len(), 8);
    let zzx = pauli.iter().find(|e| e["string"] == "ZZX").unwrap();
    assert!((zzx["coeff"].as_f64().unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn analyze_identity_has_order_zero() {
    let out = hamlog(&["analyze", "identity:2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("gate: identity:2"));
    assert!(text.contains("order: 0"));
}

#[test]
fn branches_cnot_json() {
    let out = hamlog(&["branches", "cnot", "--bound", "1", "--output", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "branches");
    assert_eq!(v["result"]["branches_examined"], 81);
    assert_eq!(v["result"]["min_weight"], 2);
    assert_eq!(v["result"]["seed"], 0);
    assert_eq!(v["result"]["argmin_integers"].as_array().unwrap().len(), 4);
    assert!(v["result"]["argmin_pauli"].is_array());
}

#[test]
fn variational_cnot_json() {
    let out = hamlog(&[
        "variational", "cnot", "--locality", "2", "--restarts", "4", "--iters", "300",
        "--seed", "1", "--output", "json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "variational");
    assert_eq!(v["result"]["locality"], 2);
    assert_eq!(v["result"]["parameter_count"], 16);
    assert_eq!(v["result"]["history"].as_array().unwrap().len(), 4);
    assert!(v["result"]["best_distance"].as_f64().unwrap() < 1e-6);
}

#[test]
fn couplings_roundtrip_directions_agree() {
    let out = hamlog(&[
        "couplings", "--n", "2", "--alpha", "1,0,0,1", "--output", "json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let eps: Vec<f64> = v["result"]["epsilon"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(eps, vec![2.0, 0.0, 0.0, 2.0]);
    assert_eq!(v["result"]["z_strings"][3], "ZZ");

    let back = hamlog(&[
        "couplings", "--n", "2", "--epsilon", "2,0,0,2", "--output", "json",
    ]);
    let v2: Value = serde_json::from_str(&stdout(&back)).unwrap();
    let alpha: Vec<f64> = v2["result"]["alpha"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(alpha, vec![1.0, 0.0, 0.0, 1.0]);
}

#[test]
fn file_gate_accepts_valid_unitary() {
    let path = scratch_path("x-gate.txt");
    fs::write(&path, "1\n0,0 1,0\n1,0 0,0\n").unwrap();
    let arg = format!("file:{}", path.display());
    let out = hamlog(&["analyze", &arg]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("order: 1"));
    fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", "hadamard3"],
        vec!["analyze", "ccx:9"],
        vec!["branches", "cnot", "--bound", "-1"],
        vec!["branches", "ccx:4", "--bound", "2"],
        vec!["variational", "cnot", "--locality", "3"],
        vec!["variational", "cnot", "--locality", "1", "--restarts", "0"],
        vec!["couplings", "--n", "2", "--alpha", "1,2,3"],
        vec!["couplings", "--n", "2", "--alpha", "1,2,3,4", "--epsilon", "1,2,3,4"],
        vec!["couplings", "--n", "2"],
    ];
    for args in cases {
        let out = hamlog(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?}, stderr: {}",
            stderr(&out)
        );
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn non_unitary_file_gate_reports_residual() {
    let path = scratch_path("bad-gate.txt");
    fs::write(&path, "1\n1,0 1,0\n0,0 1,0\n").unwrap();
    let arg = format!("file:{}", path.display());
    let out = hamlog(&["analyze", &arg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unitary"), "stderr: {}", stderr(&out));
    fs::remove_file(&path).ok();
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let args = [
        "branches", "cnot", "--bound", "1", "--samples", "3", "--seed", "7",
        "--output", "json",
    ];
    let a = hamlog(&args);
    let b = hamlog(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let args = [
        "variational", "cnot", "--locality", "1", "--restarts", "3", "--iters", "200",
        "--seed", "7", "--output", "json",
    ];
    let a = hamlog(&args);
    let b = hamlog(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file_instead_of_stdout() {
    let path = scratch_path("report.json");
    let out = hamlog(&[
        "analyze", "cnot", "--output", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "analyze");
    assert!(v.get("config").is_some() && v.get("result").is_some());
    fs::remove_file(&path).ok();
}
