//! End-to-end tests of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_treedeform"))
}

fn stdout_of(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("binary runs");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn star_two_adds_monomials() {
    assert_eq!(stdout_of(&["star", "2", "X^(1)", "X^(1)"]), "X^(2)");
}

#[test]
fn block_coproduct_of_a_monomial_is_primitive() {
    assert_eq!(
        stdout_of(&["coproduct", "d2", "X^(1)", "--budget", "1"]),
        "1 \u{2297} X^(1) + X^(1) \u{2297} 1"
    );
}

#[test]
fn check_suite_passes_with_exit_zero() {
    let out = bin().args(["check", "chu"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS chu"));
}

#[test]
fn json_output_carries_the_schema_version() {
    let raw = stdout_of(&["--format", "json", "star", "2", "X^(1)", "X^(1)"]);
    let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(v["schema"], "treedeform/1");
    assert_eq!(v["terms"][0]["basis"], "X^(2)");
    assert_eq!(v["terms"][0]["coeff"], "1");
}

#[test]
fn parse_errors_exit_with_usage_code() {
    let out = bin().args(["star", "2", "X^(1,0)", "X^(1)"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["check", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["star", "7", "X^(1)", "X^(1)"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_declares_edge_kinds() {
    let dir = std::env::temp_dir();
    let path = dir.join("treedeform-test-config.json");
    std::fs::write(
        &path,
        r#"{"edge_kinds": [{"name": "w", "degree": "-1/2", "integration": true}]}"#,
    )
    .unwrap();
    let out = stdout_of(&[
        "--config",
        path.to_str().unwrap(),
        "graft",
        "X^(0)",
        "(w,(0))",
        "X^(0)",
    ]);
    assert_eq!(out, "X^(0)[(w,(0))->X^(0)]");
    let bad = bin()
        .args(["--config", path.to_str().unwrap(), "graft", "X^(0)", "(t,(0))", "X^(0)"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn theta_round_trips_through_the_cli() {
    let t = "X^(1)[(t,(1))->X^(0)]";
    let shifted = stdout_of(&["theta", t]);
    assert_ne!(shifted, t);
    assert_eq!(stdout_of(&["theta", &shifted, "--inverse"]), t);
}
