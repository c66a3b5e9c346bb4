use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn krcycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krcycle")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const THREE_TRIANGLES: &str = "# three triangles in a ring\n6 9\n0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n0 4\n0 5\n4 5\n";

#[test]
fn solve_finds_the_ring_of_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(&path, THREE_TRIANGLES).unwrap();
    let v = stdout_json(&krcycle(&["solve", "--graph", path.to_str().unwrap(), "--r", "3"]));
    assert_eq!(v["status"], "found");
    assert_eq!(v["certificate"], serde_json::json!([[0, 1, 2], [2, 3, 4], [0, 4, 5]]));
    assert_eq!(v["uncovered"], serde_json::json!([]));
}

#[test]
fn solve_reports_uncovered_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(&path, "6 3\n0 1\n0 2\n1 2\n").unwrap();
    let v = stdout_json(&krcycle(&["solve", "--graph", path.to_str().unwrap()]));
    assert_eq!(v["status"], "none");
    assert_eq!(v["nodes"], 0);
    assert_eq!(v["uncovered"], serde_json::json!([3, 4, 5]));
}

#[test]
fn oracle_agrees_on_a_minimal_ring() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    fs::write(&path, "6 3 3\n0 1 2\n2 3 4\n0 4 5\n").unwrap();
    let v = stdout_json(&krcycle(&["oracle", "--hypergraph", path.to_str().unwrap()]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["search"]["status"], "found");
    assert_eq!(v["brute_force"]["status"], "found");
}

#[test]
fn balance_for_cliques_and_patterns() {
    let v = stdout_json(&krcycle(&["balance", "--kr", "4"]));
    assert_eq!(v["d1"], "2");
    assert_eq!(v["strictly_1_balanced"], true);
    assert_eq!(v["thresholds"]["kr_cycle"]["p_exponent"], "-1/2");
    assert_eq!(v["thresholds"]["kr_cycle"]["log_exponent"], "1/6");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.txt");
    fs::write(&path, "4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap();
    let args = ["balance", "--pattern", path.to_str().unwrap(), "--overlap", "2", "--shared-edges", "1"];
    let v = stdout_json(&krcycle(&args));
    assert_eq!(v["d1"], "4/3");
    assert_eq!(v["thresholds"]["first_moment"]["p_exponent"], "-2/3");
    assert_eq!(v["thresholds"]["first_moment"]["pi_exponent"], "-8/3");
    assert_eq!(v["thresholds"]["hc_comparison"]["relation"], "below threshold");
}

#[test]
fn sweep_csv_is_reproducible() {
    let args = ["sweep", "--n", "6,8", "--omega", "1,2", "--trials", "4", "--seed", "5"];
    let a = krcycle(&args);
    let b = krcycle(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,r,omega,p,trial,seed,status,uncovered,nodes,elapsed_ms,clamped"));
    assert_eq!(lines.count(), 16);
}

#[test]
fn sweep_json_and_summary_file() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("summary.csv");
    let out = krcycle(&[
        "sweep", "--mode", "loose-hc", "--n", "6", "--omega", "2", "--trials", "3", "--out", "json", "--summary",
        summary.to_str().unwrap(),
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["records"].as_array().unwrap().len(), 3);
    assert_eq!(v["summary"][0]["trials"], 3);
    let csv = fs::read_to_string(summary).unwrap();
    assert!(csv.starts_with("n,r,omega,p,trials,found,none,unknown,probability"));
}

#[test]
fn exit_codes() {
    assert_eq!(krcycle(&["--help"]).status.code(), Some(0));
    assert_eq!(krcycle(&["sweep", "--n", "x", "--omega", "1"]).status.code(), Some(1));
    assert_eq!(krcycle(&["sweep", "--n", "7", "--omega", "1"]).status.code(), Some(1));
    assert_eq!(krcycle(&["solve", "--graph", "/nonexistent/graph.txt"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "3 1\n2 1\n").unwrap();
    assert_eq!(krcycle(&["solve", "--graph", path.to_str().unwrap()]).status.code(), Some(2));
}
