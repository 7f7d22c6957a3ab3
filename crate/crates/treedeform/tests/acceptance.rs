//! Runs every verification suite at the default desk scale and prints one
//! pass/fail line per criterion.

use treedeform::session::SessionConfig;
use treedeform::suites::{run_suite, SUITE_NAMES};

#[test]
fn acceptance() {
    let cfg = SessionConfig::default();
    let mut failed = Vec::new();
    for (i, name) in SUITE_NAMES.iter().enumerate() {
        let report = run_suite(&cfg, name).expect("known suite");
        println!("criterion {:2}: {}", i + 1, report.line());
        if !report.passed() {
            failed.push(report.line());
        }
    }
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.join("\n"));
}
