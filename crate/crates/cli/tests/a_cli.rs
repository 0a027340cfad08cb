use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn autgates(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_autgates")).args(args).env_remove("AUTGATES_BUDGET_MS").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = autgates(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_dimensions() {
    let (code, v) = json(&["analyze", path(&corpus("422.txt"))]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["code"]["k"], 2);
    assert_eq!(v["tableau_valid"], true);
    let (_, v) = json(&["analyze", path(&corpus("513.txt"))]);
    assert_eq!(v["code"]["k"], 1);
    assert_eq!(v["logical_x_standard"][0], "00001|10010");
}

#[test]
fn empty_code_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("empty.txt");
    std::fs::write(&f, "# nothing\n").unwrap();
    let (code, _, err) = autgates(&["analyze", f.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
    std::fs::write(&f, "XX\nZI\n").unwrap();
    let (code, _, err) = autgates(&["analyze", f.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = autgates(&["analyze", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn gates_reports_group_orders() {
    let f = corpus("513.txt");
    let (code, v) = json(&["gates", path(&f), "--rep", "hswap", "--rows", "codewords"]);
    assert_eq!(code, 0);
    assert_eq!(v["automorphisms"]["order"], "20");
    assert!(v["gates"].as_array().unwrap().iter().any(|g| g["name"] == "H(0)"));
    assert!(v["gates"].as_array().unwrap().iter().all(|g| g["verified"] == true));
    let (_, v) = json(&["gates", path(&f), "--rows", "codewords"]);
    assert_eq!(v["automorphisms"]["order"], "360");
    assert_eq!(v["logical_group_order"], "6");
}

#[test]
fn reports_are_deterministic() {
    let f = corpus("513.txt");
    let a = autgates(&["--json", "gates", path(&f), "--rows", "codewords"]);
    let b = autgates(&["--json", "gates", path(&f), "--rows", "codewords"]);
    assert_eq!(a, b);
}

#[test]
fn find_gate_outcomes() {
    let f = corpus("422.txt");
    let (code, out, _) = autgates(&["find-gate", path(&f), "--target", "CNOT(0,1)", "--rows", "codewords"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "SWAP 1 3"), "{out}");
    let (code, _, _) = autgates(&["find-gate", path(&f), "--target", "S(0)", "--rows", "codewords"]);
    assert_eq!(code, 2);
    let (code, out, _) = autgates(&["find-gate", path(&f), "--target", "S(0)", "--rows", "codewords", "--embed", path(&corpus("pairs_422_all.txt"))]);
    assert_eq!(code, 0);
    assert!(out.contains("CZ"), "{out}");
    let (code, out, _) = autgates(&["find-gate", path(&f), "--target", "I"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 0, "{out}");
    let (code, _, _) = autgates(&["find-gate", path(&f), "--target", "BOGUS(0)"]);
    assert_eq!(code, 3);
    let (code, out, _) = autgates(&["find-gate", path(&f), "--target", "CNOT(1,0)", "--qasm"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("OPENQASM 2.0;"), "{out}");
}

#[test]
fn find_gate_accepts_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("target.txt");
    // Logical SWAP: X0 <-> X1, Z0 <-> Z1.
    std::fs::write(&t, "0100\n1000\n0001\n0010\n").unwrap();
    let (code, v) = json(&["find-gate", path(&corpus("422.txt")), "--target", t.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["name"], "SWAP(0,1)");
}

#[test]
fn verify_verdicts() {
    let (code, v) = json(&["verify", path(&corpus("422.txt")), path(&corpus("circuits/422_cz.txt"))]);
    assert_eq!(code, 0);
    assert_eq!(v["name"], "CZ(0,1)");
    let (code, v) = json(&["verify", path(&corpus("513.txt")), path(&corpus("circuits/x0.txt"))]);
    assert_eq!(code, 2);
    assert_eq!(v["valid"], false);
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("bad.txt");
    std::fs::write(&c, "H 0\nFOO 1\n").unwrap();
    let (code, _, _) = autgates(&["verify", path(&corpus("513.txt")), c.to_str().unwrap()]);
    assert_eq!(code, 3);
    std::fs::write(&c, "CNOT 0 1\n").unwrap();
    let (code, v) = json(&["verify", path(&corpus("513.txt")), c.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["logical"], false);
}

#[test]
fn budget_exhaustion_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_autgates"))
        .args(["gates", path(&corpus("bb72.txt"))])
        .env("AUTGATES_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn embedded_gates_respect_two_qubit_cap() {
    let (code, v) = json(&["gates", path(&corpus("422.txt")), "--embed", "all", "--max-two-qubit", "1"]);
    assert_eq!(code, 0);
    let gates = v["gates"].as_array().unwrap();
    assert!(gates.iter().any(|g| g["two_qubit_gates"] == 1));
    assert!(gates.iter().all(|g| g["two_qubit_gates"].as_u64().unwrap() <= 1));
}
