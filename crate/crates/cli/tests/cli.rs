//! End-to-end tests of the binary: spawn it, parse its stdout, check exit
//! codes and diagnostics against the command-line contract.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn uzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uzero"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout should be valid JSON")
}

fn field<'a>(v: &'a Value, path: &[&str]) -> &'a Value {
    let mut cur = v;
    for key in path {
        cur = cur
            .get(key)
            .unwrap_or_else(|| panic!("missing field '{key}' in {cur}"));
    }
    cur
}

fn as_f64(v: &Value, path: &[&str]) -> f64 {
    field(v, path).as_f64().unwrap_or_else(|| panic!("{path:?} not a number"))
}

#[test]
fn solve_reports_hydrogen_ground_state() {
    let out = uzero(&["solve", "--potential", "coulomb:z=1", "--n", "0"]);
    let doc = stdout_json(&out);
    assert_eq!(field(&doc, &["schema"]), 1);
    assert_eq!(field(&doc, &["problem", "mode", "kind"]), "u0");
    assert!((as_f64(&doc, &["result", "E"]) + 0.5).abs() < 1e-6);
    assert_eq!(field(&doc, &["result", "nodes"]), 0);
    assert!(as_f64(&doc, &["result", "mismatch"]).abs() < 1e-8);
    assert!((as_f64(&doc, &["result", "origin_slope"]) - 1.0).abs() < 1e-3);
    assert_eq!(field(&doc, &["result", "compatible"]), true);
    assert!(as_f64(&doc, &["result", "defect"]).abs() < 1e-6);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["solve", "--potential", "coulomb:z=1+harmonic:omega=0.25"];
    let first = uzero(&args);
    let second = uzero(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn missing_state_exits_two_with_one_diagnostic_line() {
    let out = uzero(&["solve", "--potential", "invsq:c=0.5", "--mode", "u0", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "no partial report on failure");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.trim_end().lines().count(), 1, "stderr: {stderr}");
}

#[test]
fn unknown_potential_exits_one() {
    let out = uzero(&["solve", "--potential", "wiggle:a=1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("wiggle"));
}

#[test]
fn unknown_flag_exits_one() {
    let out = uzero(&["solve", "--potential", "coulomb:z=1", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn indicial_reports_window_exponents() {
    let out = uzero(&["indicial", "--potential", "invsq:c=-0.1875", "--l", "0"]);
    let doc = stdout_json(&out);
    assert!((as_f64(&doc, &["report", "s_plus"]) - 0.75).abs() < 1e-12);
    assert!((as_f64(&doc, &["report", "s_minus"]) - 0.25).abs() < 1e-12);
    assert_eq!(field(&doc, &["report", "classification"]), "limit_circle_window");
    assert_eq!(field(&doc, &["report", "admissible", "u0", "ambiguous"]), true);
    let loose = field(&doc, &["report", "admissible", "l2", "exponents"])
        .as_array()
        .expect("exponent list");
    assert_eq!(loose.len(), 2);
}

#[test]
fn delta_check_exp_trial_recovers_reference() {
    let out = uzero(&["delta-check", "--trial", "exp"]);
    let doc = stdout_json(&out);
    let reference = as_f64(&doc, &["reference"]);
    assert!((reference + 4.0 * std::f64::consts::PI).abs() < 1e-12);
    let rows = field(&doc, &["rows"]).as_array().expect("rows");
    assert_eq!(rows.len(), 4);
    for row in rows {
        let defect = as_f64(row, &["defect"]);
        assert!(
            (defect + 12.566371).abs() < 1e-6,
            "defect {defect} should sit at -4*pi"
        );
    }
}

#[test]
fn oracle_matches_harmonic_levels() {
    let out = uzero(&[
        "oracle",
        "--potential",
        "harmonic:omega=1",
        "--k",
        "2",
        "--points",
        "4000",
        "--r-max",
        "40",
    ]);
    let doc = stdout_json(&out);
    let eigen = field(&doc, &["eigenvalues"]).as_array().expect("eigenvalues");
    assert_eq!(eigen.len(), 2);
    let e0 = eigen[0].as_f64().unwrap();
    let e1 = eigen[1].as_f64().unwrap();
    assert!((e0 - 1.5).abs() < 1e-3, "ground level {e0}");
    assert!((e1 - 3.5).abs() < 1e-3, "first excited level {e1}");
}

#[test]
fn compare_shows_loose_only_spectrum_for_repulsive_core() {
    let out = uzero(&[
        "compare",
        "--potential",
        "invsq:c=0.5",
        "--r-min",
        "1e-3",
        "--points",
        "16000",
        "--thetas",
        "0.5,1",
        "--n-max",
        "0",
    ]);
    let doc = stdout_json(&out);
    let rows = field(&doc, &["rows"]).as_array().expect("rows");
    assert!(!rows.is_empty());
    assert!(
        rows.iter().all(|r| field(r, &["mode"]) == "l2"),
        "a repulsive potential admits no strict-boundary states"
    );
    for row in rows {
        assert_eq!(field(row, &["compatible"]), false);
        assert!(as_f64(row, &["E"]) < 0.0, "mixing rows are bound states");
    }
    let last = as_f64(&rows[rows.len() - 1], &["E"]);
    assert!((last + 0.19925333).abs() < 1e-5, "theta=1 level {last}");
}

#[test]
fn solve_csv_has_pinned_header_and_one_row() {
    let out = uzero(&["solve", "--potential", "coulomb:z=1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).expect("utf8");
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("E,nodes,mismatch,origin_slope,compatible,defect")
    );
    let row = lines.next().expect("one data row");
    assert_eq!(row.split(',').count(), 6);
    assert!(lines.next().is_none());
}

#[test]
fn tabulated_potential_loads_from_file() {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    writeln!(file, "0.1,-10\n0.5,-2\n1.0,-1\n2.0,-0.5\n4.0,-0.25\n8.0,-0.125")
        .expect("write samples");
    let spec = format!("file:{}", file.path().display());
    let out = uzero(&["indicial", "--potential", &spec]);
    let doc = stdout_json(&out);
    assert_eq!(field(&doc, &["report", "classification"]), "standard");
}

#[test]
fn spectrum_lists_ascending_hydrogen_levels() {
    let out = uzero(&["spectrum", "--potential", "coulomb:z=1", "--n-max", "2"]);
    let doc = stdout_json(&out);
    let states = field(&doc, &["states"]).as_array().expect("states");
    assert_eq!(states.len(), 3);
    for (n, state) in states.iter().enumerate() {
        assert_eq!(field(state, &["n"]), n);
        let expected = -0.5 / ((n as f64 + 1.0) * (n as f64 + 1.0));
        assert!((as_f64(state, &["E"]) - expected).abs() < 1e-6);
    }
}
