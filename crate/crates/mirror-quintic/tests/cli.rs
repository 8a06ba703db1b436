//! End-to-end tests of the `mq` binary: exit codes, output formats, and the
//! documented JSON schemas.

use std::process::Command;

fn mq(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_mq"))
        .args(args)
        .env_remove("MQE_D5MAX")
        .output()
        .expect("binary runs")
}

#[test]
fn pf_derive_prints_normalized_operator() {
    let out = mq(&["pf", "derive", "--sector", "0,0,0,0,0", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: 4"));
    // expanded normalized form: D^4 + e^t block with leading -3125 D^4 term
    assert!(text.contains("1*D^4"), "got: {}", text);
    assert!(text.contains("-3125*e^t*D^4"), "got: {}", text);
}

#[test]
fn pf_derive_json_round_trips() {
    let out = mq(&["pf", "derive", "--sector", "0,0,0,2,3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["sector"], "0,0,0,2,3");
    assert_eq!(v["order"], 2);
    let parsed = mirror_quintic::bmodel::PFResult::from_json(&v).unwrap();
    assert_eq!(parsed.order, 2);
}

#[test]
fn invalid_sector_is_a_usage_error() {
    // residues reduce to 4,0,0,0,0 with nonzero sum
    let out = mq(&["jy", "--sector", "9,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("sector"), "stderr: {}", err);
}

#[test]
fn sector_argument_keeps_input_order() {
    let out = mq(&["ib", "--sector", "3,2,0,0,0", "--order", "1", "--format", "json"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3,2,0,0,0"), "got: {}", text);
}

#[test]
fn check_all_passes_and_reports_each_check() {
    let out = mq(&["check", "all", "--order", "3", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert!(reports.len() >= 10);
    // aggregated output is sorted by check name
    let names: Vec<&str> = reports
        .iter()
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn compare_exit_code_reflects_result() {
    let out = mq(&["compare", "--order", "2"]);
    assert!(out.status.success());
}

#[test]
fn recursion_retries_singular_default_weights() {
    // (0,1,2,3,4) is singular at this depth; the CLI must fall back to
    // seeded weights and still pass
    let out = mq(&["recursion", "--sector", "0,0,0,0,0", "--cmax", "10"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("retrying"), "stderr: {}", err);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pass"), "stdout: {}", text);
}

#[test]
fn recursion_explicit_weights() {
    let out = mq(&[
        "recursion",
        "--sector",
        "0,0,0,2,3",
        "--weights",
        "0,1,17,289,4913",
        "--cmax",
        "8",
    ]);
    assert!(out.status.success());
}

#[test]
fn mirror_map_json_shape() {
    let out = mq(&["mirror-map", "--order", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("F0").is_some());
    assert!(v.get("tau").is_some());
}

#[test]
fn sectors_listing_counts() {
    let out = mq(&["sectors", "--space", "w", "--age", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total: 100"), "got: {}", text);
}

#[test]
fn env_var_truncation_is_used() {
    let out = Command::new(env!("CARGO_BIN_EXE_mq"))
        .args(["ia", "--sector", "0,0,0,0,0", "--format", "json"])
        .env("MQE_D5MAX", "5")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"d5\": 5"), "got: {}", text);
    assert!(!text.contains("\"d5\": 10"), "got: {}", text);
}
