//! End-to-end tests of the `towercheck` binary: exit codes, output formats
//! and scenario files.

use std::path::Path;
use std::process::{Command, Output};

fn towercheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_towercheck")).args(args).env_remove("TOWERCHECK_REPORT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("invalid JSON ({e}): {}", stdout(o)))
}

#[test]
fn verify_passes_with_exit_code_zero() {
    let out = towercheck(&["verify", "--scenario", "jz-canonical-class"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("5/5 checks pass"));
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    for args in [
        &["verify", "--scenario", "jz-canonical-class", "--n", "2"][..],
        &["verify", "--scenario", "no-such-scenario"],
        &["verify", "--scenario", "jz-canonical-class", "--bogus"],
        &["verify"],
        &["verify", "--scenario", "jz-canonical-class", "--n", "range:5..3"],
        &["verify", "--scenario", "normal-cone-quadric", "--n", "symbolic"],
        &["table", "--scenario", "local-model-stabilizers", "--n", "3"],
        &["verify", "--file", "/nonexistent/scenario.json"],
    ] {
        let out = towercheck(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} prints a diagnostic");
    }
}

#[test]
fn json_reports_parse() {
    let out = towercheck(&["verify", "--scenario", "jz-intersection-table", "--n", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["scenario"], "jz-intersection-table");
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 16);
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn ranges_produce_one_report_per_n() {
    let out = towercheck(&["verify", "--scenario", "pushforward-iz1z2", "--n", "range:3..6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for (r, k) in reports.iter().zip(3..) {
        assert_eq!(r["n"].to_string().trim_matches('"'), k.to_string());
    }
}

#[test]
fn list_shows_every_scenario() {
    let out = towercheck(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().count() >= 13);
    assert!(text.contains("jz-canonical-class"));
    let listed = json(&towercheck(&["list", "--format", "json"]));
    assert_eq!(listed.as_array().unwrap().len(), text.lines().count());
}

#[test]
fn intersection_table_does_not_depend_on_n() {
    let at = |n: &str| {
        let out = towercheck(&["table", "--scenario", "jz-intersection-table", "--n", n, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        json(&out)["rows"].clone()
    };
    assert_eq!(at("3"), at("4"));
    assert_eq!(at("3"), at("9"));
}

#[test]
fn kernel_table_names_the_generator() {
    let out = towercheck(&["table", "--scenario", "ez-kernel-x2-x3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("x2 - x3"), "{}", stdout(&out));
}

#[test]
fn cone_prints_generators_and_hypotheses() {
    let out = towercheck(&["cone", "--scenario", "mori-chain-jz", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("R+"));
    assert!(!text.contains("FAILED"));
}

fn export(name: &str, dir: &Path) -> std::path::PathBuf {
    let path = dir.join(format!("{name}.json"));
    let out = towercheck(&["export", "--scenario", name, "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    path
}

#[test]
fn exported_files_verify_like_the_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = export("ez-kernel-x2-x3", dir.path());
    let from_file = towercheck(&["verify", "--file", path.to_str().unwrap(), "--n", "4", "--format", "json"]);
    let builtin = towercheck(&["verify", "--scenario", "ez-kernel-x2-x3", "--n", "4", "--format", "json"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, builtin.stdout);
}

#[test]
fn failing_checks_exit_with_one_and_still_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = export("ez-kernel-x2-x3", dir.path());
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["expect"][0]["value"] = serde_json::json!({ "matrix": [[{}, { "0": "1" }, { "0": "1" }, {}]] });
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let out = towercheck(&["verify", "--file", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let failing: Vec<&serde_json::Value> =
        report["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "FAIL").collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["name"], "kernel of the restriction");
}

#[test]
fn report_directory_receives_copies() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_towercheck"))
        .args(["verify", "--scenario", "euler-convention", "--n", "range:3..4", "--format", "json"])
        .env("TOWERCHECK_REPORT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    for k in [3, 4] {
        let copy = dir.path().join(format!("euler-convention-n{k}.json"));
        let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&copy).unwrap()).unwrap();
        assert_eq!(report["scenario"], "euler-convention");
    }
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = towercheck(&["verify", "--scenario", "incidence-fixed-locus", "--n", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("incidence-fixed-locus"));
}
