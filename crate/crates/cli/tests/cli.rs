use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minusclass"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("minusclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn ints(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn classify_lists_3r_distinct_lattices() {
    for (p, r) in [("3", 2usize), ("7", 3), ("7", 6)] {
        let v = json_ok(&["classify", "--p", p, "--r", &r.to_string()]);
        let lattices = v["lattices"].as_array().unwrap();
        assert_eq!(lattices.len(), 3 * r);
        let mut prints: Vec<String> = lattices.iter().map(|l| l["fingerprint"].to_string()).collect();
        prints.sort();
        prints.dedup();
        assert_eq!(prints.len(), 3 * r);
        assert!(v["header"]["s"].as_u64().is_some());
    }
}

#[test]
fn phi_of_trivial_module() {
    let fp = json_ok(&["make", "--p", "3", "--r", "2", "fp"]);
    let path = tmp("fp.json", &fp.to_string());
    let v = json_ok(&["phi", path.to_str().unwrap()]);
    assert_eq!(ints(&v["a"]), [1, 0]);
    assert_eq!(ints(&v["b"]), [0, 1]);
}

#[test]
fn group_ring_is_sum_of_projectives() {
    let m = json_ok(&["make", "--p", "5", "--r", "4", "group-ring"]);
    let path = tmp("ring.json", &m.to_string());
    let v = json_ok(&["fingerprint", path.to_str().unwrap()]);
    assert_eq!(ints(&v["c"]), [1, 1, 1, 1]);
    assert_eq!(ints(&v["a"]), [0, 0, 0, 0]);
    assert_eq!(ints(&v["b"]), [0, 0, 0, 0]);
}

#[test]
fn omega_twice_twists() {
    let m = json_ok(&["make", "--p", "3", "--r", "2", "l1"]);
    let path = tmp("l1.json", &m.to_string());
    let once = json_ok(&["omega", path.to_str().unwrap()]);
    assert_eq!(ints(&once["a"]), [0, 0]);
    assert_eq!(ints(&once["b"]), [0, 1]);
    let twice = json_ok(&["omega", "--times", "2", path.to_str().unwrap()]);
    assert_eq!(ints(&twice["a"]), [0, 1]);
    assert_eq!(ints(&twice["b"]), [0, 0]);
}

#[test]
fn adm_basis_sizes() {
    assert_eq!(json_ok(&["adm", "--p", "3", "--r", "2"])["size"], 2);
    assert_eq!(json_ok(&["adm", "--p", "7", "--r", "6"])["size"], 4);
}

#[test]
fn realize_then_predict_round_trips() {
    let v = tmp("v.json", r#"{"r":6,"a":[1,2,1,2,1,2],"b":[2,1,2,1,2,1]}"#);
    let plan = json_ok(&["realize", "--p", "7", v.to_str().unwrap()]);
    assert_eq!(plan["coords"], "preshift");
    let pairs: Vec<Value> = plan["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| serde_json::json!({ "D": w["D"], "I": w["I"] }))
        .collect();
    let path = tmp("pairs.json", &Value::Array(pairs).to_string());
    let pred = json_ok(&["predict", path.to_str().unwrap()]);
    assert_eq!(ints(&pred["preshift"]["a"]), [1, 2, 1, 2, 1, 2]);
    assert_eq!(ints(&pred["preshift"]["b"]), [2, 1, 2, 1, 2, 1]);
}

#[test]
fn pairs_output_feeds_predict() {
    let pairs = json_ok(&["pairs", "--p", "5", "--r", "4"]);
    assert!(!pairs.as_array().unwrap().is_empty());
    let path = tmp("all-pairs.json", &pairs.to_string());
    let pred = json_ok(&["predict", path.to_str().unwrap()]);
    let a: u64 = ints(&pred["preshift"]["a"]).iter().sum();
    let b: u64 = ints(&pred["preshift"]["b"]).iter().sum();
    assert_eq!(a, b);
}

#[test]
fn invalid_parameters_exit_2() {
    let out = run(&["verify", "--p", "5", "--r", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn schema_error_exit_2() {
    let path = tmp("bad-module.json", r#"{"p":3,"r":2,"k":4,"group":"gamma","rank":1,"relations":[[0]],"action":{"sigma":[[1]]}}"#);
    let out = run(&["fingerprint", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("action.tau"));
}

#[test]
fn not_admissible_exit_4() {
    let path = tmp("odd.json", r#"{"r":2,"a":[1,0],"b":[1,0]}"#);
    let out = run(&["realize", "--p", "3", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("admissible"));
}

#[test]
fn verify_classify_suite_passes() {
    let v = json_ok(&["verify", "--p", "3", "--r", "2", "--suite", "classify"]);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["passed"] == true));
}
