//! End-to-end tests of the `rigi` binary: exit codes, report shapes, and
//! artifact files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rigi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_k5(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("k5.txt");
    let mut text = String::from("5 10\n");
    for u in 0..5 {
        for v in (u + 1)..5 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn analyze_k5_certifies_global_rigidity() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_k5(dir.path());
    let out = rigi(&["analyze", k5.to_str().unwrap(), "--dim", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rank_report.rigid = true"));
    assert!(text.contains("redundancy.kind = redundantly_rigid"));
    assert!(text.contains("global_rigidity.status = certified_globally_rigid"));
}

#[test]
fn analyze_path_yields_connectivity_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path3.txt");
    fs::write(&path, "3 2\n0 1\n1 2\n").unwrap();
    let out = rigi(&["analyze", path.to_str().unwrap(), "--dim", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("global_rigidity.status = certified_not_globally_rigid"));
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "3 1\n0 0\n").unwrap();
    let out = rigi(&["analyze", path.to_str().unwrap(), "--dim", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_file_exits_2() {
    let out = rigi(&["analyze", "/nonexistent/graph.txt", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_counterexample_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("tight2.txt");
    let out = rigi(&[
        "construct",
        "tight-counterexample",
        "d=2",
        "--out",
        graph_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n = 30"));
    assert!(text.contains("m = 75"));
    assert!(text.contains("vertex_transitive = true"));

    let emitted = fs::read_to_string(&graph_path).unwrap();
    assert!(emitted.starts_with("30 75\n"));
    let sidecar = dir.path().join("tight2.provenance.json");
    let prov: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert_eq!(prov["copies"].as_array().unwrap().len(), 6);
    assert_eq!(prov["matching"].as_array().unwrap().len(), 15);
}

#[test]
fn construct_invalid_circulant_exits_2() {
    let out = rigi(&["construct", "circulant", "n=4", "s=9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_without_spec_exits_2() {
    let out = rigi(&["construct"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_tightness_plane() {
    let out = rigi(&["verify-tightness", "--dim", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("report.bound = 56"));
    assert!(text.contains("report.target = 57"));
    assert!(text.contains("verdict = certified_not_globally_rigid"));
}

#[test]
fn verify_tightness_dim_one_exits_2() {
    let out = rigi(&["verify-tightness", "--dim", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn probe_orderings_finds_witness_on_k66() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k66.txt");
    let mut text = String::from("12 36\n");
    for u in 0..6 {
        for v in 0..6 {
            text.push_str(&format!("{u} {}\n", 6 + v));
        }
    }
    fs::write(&path, text).unwrap();
    let out = rigi(&[
        "probe-orderings",
        path.to_str().unwrap(),
        "--dim",
        "2",
        "--budget",
        "200",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dependent_found = true"));
    assert!(text.contains("hypotheses.min_degree = true"));
    assert!(text.contains("hypotheses.no_clique_neighborhood = true"));
    assert!(text.contains("hypotheses.clique_intersections = true"));
}

#[test]
fn exhausted_search_budget_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_k5(dir.path());
    let out = rigi(&[
        "analyze",
        k5.to_str().unwrap(),
        "--dim",
        "2",
        "--automorphism-budget",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn structured_output_parses_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_k5(dir.path());
    let out = rigi(&[
        "analyze",
        k5.to_str().unwrap(),
        "--dim",
        "2",
        "--format",
        "structured",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["command"], "analyze");
    assert_eq!(value["rank_report"]["rank"], 7);
    // round trip: emit -> parse -> emit is identity
    let again = serde_json::to_string_pretty(&value).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&again).unwrap();
    assert_eq!(reparsed, value);
}

#[test]
fn seeded_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_k5(dir.path());
    let run = |seed: &str| {
        let out = rigi(&["analyze", k5.to_str().unwrap(), "--dim", "2", "--seed", seed]);
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(run("7"), run("7"));
}

#[test]
fn report_out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_k5(dir.path());
    let report_path = dir.path().join("report.txt");
    let out = rigi(&[
        "analyze",
        k5.to_str().unwrap(),
        "--dim",
        "2",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = fs::read_to_string(&report_path).unwrap();
    assert!(written.contains("global_rigidity.status = certified_globally_rigid"));
}
