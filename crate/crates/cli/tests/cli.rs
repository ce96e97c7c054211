//! Black-box tests of the command-line interface: exit codes, JSON report
//! shape, and verdict reproducibility.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_endosym"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn analyze_success_and_flags() {
    let (code, stdout, _) = run(&["analyze", "string:abab"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("quasi_frobenius"));
    assert!(stdout.contains("expected match: true"));
}

#[test]
fn analyze_parse_failure_exits_2() {
    let (code, _, stderr) = run(&["analyze", "string:aa"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("alternation"));
    let (code, _, _) = run(&["analyze", "nonsense:xyz"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_small_suite_exit_zero() {
    let (code, stdout, _) = run(&["verify", "strings", "--max-len", "4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("0 mismatched"));
}

#[test]
fn verify_unknown_suite_exits_2() {
    let (code, _, stderr) = run(&["verify", "does-not-exist"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown suite"));
}

#[test]
fn verify_json_report_schema() {
    let (code, stdout, _) = run(&["verify", "semisimple-converse", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["schema"], "report-v1");
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    assert!(v["records"].as_array().unwrap().len() >= 2);
}

#[test]
fn analyze_json_reproducible() {
    let args = ["analyze", "band:abAB:m=1:lambda=w^1@GF(16)", "--json", "--seed", "5"];
    let (c1, out1, _) = run(&args);
    let (c2, out2, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2, "same seed and field must reproduce the identical verdict");
    let v: serde_json::Value = serde_json::from_str(&out1).unwrap();
    assert_eq!(v["verdict"]["symmetric"]["value"], "false");
    assert_eq!(v["verdict"]["weakly_symmetric"]["value"], "true");
}

#[test]
fn enumerate_families() {
    let (code, stdout, _) = run(&["enumerate", "bands", "--max-len", "4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("band:abAB"));
    assert!(!stdout.contains("band:abab"), "proper powers are not bands");
    let (code, _, _) = run(&["enumerate", "nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_writes_report_file() {
    let dir = std::env::temp_dir().join(format!("endosym-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, _, _) = run(&[
        "verify",
        "klein4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], "report-v1");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn analyze_over_alternate_field_and_seed() {
    let (code, stdout, _) = run(&[
        "analyze",
        "string:ababab",
        "--field",
        "2^32",
        "--seed",
        "9",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("expected match: true"));
}
