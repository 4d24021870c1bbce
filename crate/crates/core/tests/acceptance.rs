//! One test per acceptance criterion. Each prints a PASS/FAIL line per check
//! (visible with `--nocapture`, and always shown for failures).

use predshare::verify::{run_suite, VerifyOptions, SUITES};

fn criterion(n: u8) {
    let (suite, _) = SUITES.iter().find(|(_, c)| *c == n).expect("known criterion");
    let checks = run_suite(suite, &VerifyOptions::default()).expect("suite runs");
    let passed = checks.iter().all(|c| c.passed);
    println!("criterion {n:>2} {suite}: {}", if passed { "PASS" } else { "FAIL" });
    for c in &checks {
        println!("    {}", c.line());
    }
    assert!(passed, "criterion {n} ({suite}) failed");
}

#[test]
fn c01_correlation_roundtrip() {
    criterion(1);
}

#[test]
fn c02_closed_form_equilibria() {
    criterion(2);
}

#[test]
fn c03_full_sharing_dominates_infer_sharing() {
    criterion(3);
}

#[test]
fn c04_symmetric_cost_gives_no_sharing() {
    criterion(4);
}

#[test]
fn c05_symmetric_accuracy_gives_full_sharing() {
    criterion(5);
}

#[test]
fn c06_train_sharing_witness() {
    criterion(6);
}

#[test]
fn c07_infer_sharing_witness() {
    criterion(7);
}

#[test]
fn c08_one_sample_witness() {
    criterion(8);
}

#[test]
fn c09_full_sharing_witness() {
    criterion(9);
}

#[test]
fn c10_oracle_equivalence() {
    criterion(10);
}

#[test]
fn c11_world_construction() {
    criterion(11);
}

#[test]
fn c12_empirical_pipeline() {
    criterion(12);
}
