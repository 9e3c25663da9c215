//! End-to-end CLI behavior: exit codes, output formats, determinism.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fwdual"))
}

#[test]
fn passing_suite_exits_zero_with_json() {
    let out = bin().args(["verify", "clifford"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2); // clifford + span
    assert_eq!(suites[0]["checks"].as_array().unwrap().len(), 35);
}

#[test]
fn empty_selection_is_empty_report_exit_zero() {
    let out = bin().arg("verify").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["suites"].as_array().unwrap().len(), 0);
}

#[test]
fn unknown_suite_is_an_error() {
    let out = bin().args(["verify", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "no equals sign here").unwrap();
    let out = bin()
        .args(["verify", "spin", "--config"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config error"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let run = || {
        let out = bin()
            .args(["verify", "clifford", "spin", "intertwine", "solutions"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn markdown_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let out = bin()
        .args(["verify", "spin", "--format", "md", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# Verification report"));
    assert!(text.contains("Suite `spin`"));
}
