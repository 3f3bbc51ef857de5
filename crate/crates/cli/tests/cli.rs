//! Golden runs of the binary: reports, exit codes and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use multilog::corpus;
use multilog::{run, Settings};

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{}.json", name))
}

fn multilog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multilog")).args(args).output().expect("binary runs")
}

fn json_report(args: &[&str]) -> (Output, serde_json::Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--json", &p]);
    let out = multilog(&all);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| "null".into());
    (out, serde_json::from_str(&text).unwrap())
}

fn write_problem(src: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("problem.json");
    std::fs::write(&path, src).unwrap();
    let p = path.to_str().unwrap().to_string();
    (dir, p)
}

#[test]
fn freeness_of_the_monomial_curve_pair() {
    let f = corpus_file("monomial-curve-pair");
    let (out, report) = json_report(&["freeness", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["results"]["verdict"], "free");
    assert_eq!(report["results"]["report"]["p1"], 1);
    assert_eq!(report["inputs"]["X"].as_array().unwrap().len(), 3);
}

#[test]
fn resolve_log_forms_of_the_space_curve() {
    let f = corpus_file("qh-space-curve");
    let (out, report) = json_report(&["resolve", f.to_str().unwrap(), "--target", "logforms"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["results"]["resolution"]["ranks"], serde_json::json!([8, 5]));
    assert_eq!(report["checks"]["exact"], true);
}

#[test]
fn non_free_surface_is_reported() {
    let f = corpus_file("nonfree-surface");
    let (out, report) = json_report(&["freeness", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["results"]["verdict"], "not free");
}

#[test]
fn order_flag_overrides_the_file() {
    let f = corpus_file("qh-space-curve");
    let (out, report) = json_report(&["logforms", f.to_str().unwrap(), "--order", "local"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["inputs"]["ring"]["order"], "local");
    assert_eq!(report["results"]["betti"], serde_json::json!([8, 5]));
}

#[test]
fn parse_errors_exit_with_two() {
    let (_d, p) = write_problem("{\"ring\": {\"vars\": [\"x\", \"y\"]},\n \"C\": [\"x*y - z\"]}");
    let out = multilog(&["freeness", &p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":2:15:"), "{}", err);
    let (_d, p) = write_problem("{\"ring\": {\"vars\": [\"x\"]}}");
    assert_eq!(multilog(&["derk", &p]).status.code(), Some(2));
    assert_eq!(multilog(&["derk", "/nonexistent/problem.json"]).status.code(), Some(2));
}

#[test]
fn curve_command_needs_a_parametrization() {
    let f = corpus_file("non-qh-space-curve");
    assert_eq!(multilog(&["curve", f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn engine_errors_exit_with_three() {
    // (xy, xz) is not a regular sequence.
    let (_d, p) = write_problem(r#"{"ring": {"vars": ["x", "y", "z"]}, "C": ["x*y", "x*z"]}"#);
    let out = multilog(&["freeness", &p]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[invalid_input]"));
    let f = corpus_file("qh-space-curve");
    let out = multilog(&["resolve", f.to_str().unwrap(), "--target", "logforms", "--max-length", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[resolution_too_long]"));
}

#[test]
fn failed_checks_exit_with_one() {
    let out = multilog(&["verify", "--suite", "paper", "--criterion", "99"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL criterion 99"));
}

#[test]
fn verify_prints_one_line_per_criterion() {
    let out = multilog(&["verify", "--suite", "paper", "--criterion", "7", "--criterion", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS criterion 7"));
    assert!(text.contains("PASS criterion 9"));
}

#[test]
fn reports_are_deterministic() {
    let f = corpus_file("monomial-curve-pair");
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("timings");
        v
    };
    let (_, a) = json_report(&["residues", f.to_str().unwrap()]);
    let (_, b) = json_report(&["residues", f.to_str().unwrap()]);
    assert_eq!(strip(a), strip(b));
    let (out, report) = json_report(&["curve", f.to_str().unwrap(), "--seedless"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["checks"]["deterministic"], true);
}

/// Full reports for a few corpus items, frozen after review.
#[test]
fn golden_reports() {
    for (name, command) in [
        ("qh-space-curve", multilog::Command::Freeness),
        ("normal-crossing-plane", multilog::Command::Curve),
        ("monomial-curve-pair", multilog::Command::Residues),
    ] {
        let item = corpus::get(name);
        let report = run(&command, &item.problem, &Settings::default()).unwrap();
        let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!(
            "{}-{}.json",
            command.name(),
            name
        ));
        let actual = report.canonical_json();
        if std::env::var_os("MULTILOG_BLESS").is_some() {
            std::fs::write(&golden, &actual).unwrap();
        }
        let expected = std::fs::read_to_string(&golden).unwrap();
        assert_eq!(actual, expected, "{}", golden.display());
    }
}
