//! End-to-end checks of the installed binary: exit codes, format
//! determinism, and the documented command examples.

use std::path::PathBuf;
use std::process::{Command, Output};

use qwalk_core::pst::family_catalog;
use qwalk_core::Graph;

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("stdout is UTF-8")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_str(stdout_of(output)).expect("stdout is JSON")
}

#[test]
fn exit_codes_follow_the_contract() {
    let ok = qwalk(&["pst", "icg:8:1,2", "0", "4", "--t", "pi/2"]);
    assert_eq!(ok.status.code(), Some(0), "{ok:?}");

    let miss = qwalk(&["pst", "complete:3", "0", "1", "--search", "12.566"]);
    assert_eq!(miss.status.code(), Some(0), "reporting a miss is not a failure");
    let miss = qwalk(&["pst", "complete:3", "0", "1", "--search", "12.566", "--expect-pst"]);
    assert_eq!(miss.status.code(), Some(1), "--expect-pst turns the miss into a failure");

    let bad = qwalk(&["spectrum", "join(cycle:4"]);
    assert_eq!(bad.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&bad.stderr);
    assert!(stderr.contains("parse error"), "stderr: {stderr}");

    let no_time = qwalk(&["pst", "cycle:4", "0", "2"]);
    assert_eq!(no_time.status.code(), Some(2), "--t or --search is required");

    let bad_vertex = qwalk(&["pst", "cycle:4", "0", "9", "--t", "pi/2"]);
    assert_eq!(bad_vertex.status.code(), Some(2));

    let bad_divisor = qwalk(&["spectrum", "icg:8:3"]);
    assert_eq!(bad_divisor.status.code(), Some(2));

    let unknown_filter = qwalk(&["verify-paper", "--filter", "nothing-has-this-tag"]);
    assert_eq!(unknown_filter.status.code(), Some(2));
}

#[test]
fn json_runs_are_byte_identical() {
    for args in [
        &["--format", "json", "--seed", "7", "verify-paper", "--filter", "negative"][..],
        &["--format", "json", "spectrum", "join(empty:2,cart(cycle:6,cycle:5))"][..],
        &["--format", "json", "pst", "icg:16:1,2,8", "0", "8", "--t", "pi/2"][..],
    ] {
        let first = qwalk(args);
        let second = qwalk(args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
    }
}

#[test]
fn spectrum_reports_integrality() {
    let out = qwalk(&["--format", "json", "spectrum", "cycle:4"]);
    let report = json_of(&out);
    let values: Vec<f64> = report["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_f64().unwrap())
        .collect();
    let expect = [-2.0, 0.0, 0.0, 2.0];
    assert_eq!(values.len(), 4);
    for (got, want) in values.iter().zip(expect) {
        assert!((got - want).abs() < 1e-9, "{values:?}");
    }
    assert_eq!(report["integral"], serde_json::Value::Bool(true));

    let out = qwalk(&["--format", "json", "spectrum", "icg:8:1,4"]);
    let report = json_of(&out);
    let max = report["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_f64().unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    assert!((max - 5.0).abs() < 1e-9, "degree of icg:8:1,4 is 5");

    // the cone over C6 x C5 keeps integer outliers 10 and -6
    let out = qwalk(&["--format", "json", "spectrum", "join(empty:2,cart(cycle:6,cycle:5))"]);
    let report = json_of(&out);
    let values: Vec<f64> = report["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_f64().unwrap())
        .collect();
    for want in [10.0, -6.0] {
        assert!(values.iter().any(|v| (v - want).abs() < 1e-9), "{want} missing");
    }
    assert_eq!(report["integral"], serde_json::Value::Bool(false));
}

#[test]
fn pst_examples_from_the_manual() {
    let out = qwalk(&["--format", "json", "pst", "icg:8:1,2", "0", "4", "--t", "pi/2"]);
    let report = json_of(&out);
    assert_eq!(report["found"], serde_json::Value::Bool(true));
    assert_eq!(report["antipodal"], serde_json::Value::Bool(true));
    assert!(report["fidelity"].as_f64().unwrap() >= 1.0 - 1e-9);

    let out = qwalk(&["--format", "json", "pst", "path:3", "0", "2", "--t", "pi/sqrt2"]);
    let report = json_of(&out);
    assert_eq!(report["found"], serde_json::Value::Bool(true));

    let out = qwalk(&["--format", "json", "pst", "complete:3", "0", "1", "--search", "12.566"]);
    let report = json_of(&out);
    assert_eq!(report["found"], serde_json::Value::Bool(false));
    assert!(report["fidelity"].as_f64().unwrap() < 0.7);

    // search discovers the off-grid time pi/sqrt2 to refinement accuracy
    let out = qwalk(&["--format", "json", "pst", "cart(path:3,path:3)", "0", "8", "--search", "4"]);
    let report = json_of(&out);
    assert_eq!(report["found"], serde_json::Value::Bool(true));
    let t = report["t_star"].as_f64().unwrap();
    assert!((t - std::f64::consts::PI / std::f64::consts::SQRT_2).abs() < 1e-7, "t = {t}");
}

#[test]
fn export_reimports_losslessly_for_every_catalog_recipe() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    for entry in family_catalog() {
        let path = dir.join(format!("{}.el", entry.id));
        let out = qwalk(&["export", entry.recipe, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}: {out:?}", entry.id);
        let text = std::fs::read_to_string(&path).unwrap();
        let back = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(back, (entry.build)(), "{} came back different", entry.id);
    }
}

#[test]
fn reduce_agrees_with_the_walk_for_every_rule() {
    for (expr, a, b, t) in [
        ("join(empty:2,cart(cycle:6,cycle:5))", "0", "1", "2pi/Delta"),
        ("join(complete:2,icg:24:1,12)", "0", "1", "pi/2"),
        ("selfjoin(icg:8:1,4,3)", "9", "13", "pi/2"),
        ("cjoin(icg:24:1,6,conn:24:1,3)", "0", "24", "pi/2"),
        ("cart(complete:2,cart(complete:2,complete:2))", "0", "7", "0.7853981633974483"),
    ] {
        let out = qwalk(&["--format", "json", "reduce", expr, a, b, "--t", t]);
        assert_eq!(out.status.code(), Some(0), "{expr}: {out:?}");
        let report = json_of(&out);
        assert_eq!(report["within_tol"], serde_json::Value::Bool(true), "{expr}");
        assert!(report["absdiff"].as_f64().unwrap() < 1e-12, "{expr}");
        assert_eq!(report["reduction"]["a"], report["oracle"]["a"], "{expr}");
        assert_eq!(report["reduction"]["b"], report["oracle"]["b"], "{expr}");
    }

    let out = qwalk(&["reduce", "cycle:4", "0", "1", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2), "atoms have no reduction rule");
}

#[test]
fn verify_paper_prints_one_line_per_claim() {
    let out = qwalk(&["verify-paper", "--filter", "negative"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "four claims and a summary: {text}");
    assert!(lines[..4].iter().all(|l| l.starts_with("PASS ")));
    assert!(lines[4].contains("4 claims, 0 failed"));

    let csv = qwalk(&["--format", "csv", "verify-paper", "--filter", "negative"]);
    let text = stdout_of(&csv);
    assert!(text.starts_with("id,source,passed,detail\n"));
    assert_eq!(text.lines().count(), 5);
}
