use std::process::{Command, Output};

use framing_census::FramingReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framing-census"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("framing-census-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn classify_json_counts_and_round_trips() {
    let out = run(&["classify", "--n", "8", "--g", "1", "--json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rel_boundary_orbits"], 2);
    assert_eq!(v["rel_point_orbits"], 1);
    let report: FramingReport = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim_end(), text.trim_end());
}

#[test]
fn classify_theorem_a_pattern() {
    for (n, orbits) in [(3, 2), (4, 2), (5, 1), (6, 1), (7, 2), (12, 2), (13, 1)] {
        let out = run(&["classify", "--n", &n.to_string(), "--g", "2", "--json"]);
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["rel_boundary_orbits"], orbits, "n = {n}");
    }
}

#[test]
fn quad_census_text() {
    let out = run(&["quad-census", "--g", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "arf0=10 arf1=6 (matches 2^{2g-1}±2^{g-1})"
    );
}

#[test]
fn orbits_json() {
    let out = run(&["orbits", "--g", "3", "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orbit_count"], 2);
    assert_eq!(v["orbits"][0]["size"], 36);
    assert_eq!(v["orbits"][1]["size"], 28);
}

#[test]
fn raised_bound_warns() {
    let out = run(&["quad-census", "--g", "1", "--max-g", "7"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn genus_above_bound_exits_2() {
    let out = run(&["orbits", "--g", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsupported_case_exits_2() {
    let out = run(&["classify", "--n", "1", "--g", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_input_exits_3() {
    let bad = temp_file("bad.json", "{not json");
    for cmd in ["snf", "theta"] {
        let out = run(&[cmd, "--input", bad.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(3), "{cmd}");
    }
    let out = run(&["forms", "--check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let ragged = temp_file("ragged.json", r#"{"matrix": [[1, 2], [3]]}"#);
    let out = run(&["snf", "--input", ragged.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn snf_json() {
    let m = temp_file(
        "m.json",
        r#"{"matrix": [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]}"#,
    );
    let out = run(&["snf", "--input", m.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["diagonal"], serde_json::json!(["2", "6", "12"]));
    assert_eq!(v["verified"], true);
}

#[test]
fn theta_stable_preset_matches_classify() {
    let out = run(&["theta", "--stable-preset", "--n", "4", "--g", "2", "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orbit_count"], 2);
}

#[test]
fn verify_paper_passes() {
    let out = run(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn verify_paper_list_shows_tags() {
    let out = run(&["verify-paper", "--list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[PAPER]"));
    assert!(text.contains("[DERIVED]"));
    assert!(text.lines().count() >= 20);
}

#[test]
fn witnesses_pass() {
    let out = run(&["witness", "--samples", "200", "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 6);
}

#[test]
fn unknown_witness_exits_3() {
    let out = run(&["witness", "--name", "nope"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tables_json() {
    let out = run(&["tables", "--max-n", "8", "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pi_2n_so_2n"][3]["group"], "(Z/2)^3");
}

#[test]
fn forms_check_swap() {
    let f = temp_file(
        "swap.json",
        r#"{"epsilon": 1, "matrix": [[0, -1], [-1, 0]]}"#,
    );
    let out = run(&["forms", "--check", f.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["is_isometry"], true);
    let g = temp_file("not.json", r#"{"epsilon": 1, "matrix": [[2, 0], [0, 1]]}"#);
    let out = run(&["forms", "--check", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(run(&["classify", "--n", "4"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
