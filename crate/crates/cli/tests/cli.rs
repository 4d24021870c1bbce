use std::fs;
use std::process::{Command, Output};

use predshare::distributions::theta_max;

fn predshare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_predshare"))
        .args(args)
        .env_remove("PREDSHARE_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn version_is_json() {
    let out = predshare(&["--version"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn invalid_accuracy_is_a_parameter_error() {
    let out = predshare(&["classify", "--alpha", "0.4", "--beta", "0.6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_model_parameter_is_a_parameter_error() {
    let out = predshare(&["classify", "--model", "twohyp", "--pi-i", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_train_sharing_witness() {
    let t = theta_max(0.7205, 0.5135).to_string();
    let out = predshare(&[
        "classify", "--alpha", "0.7205", "--beta", "0.5135", "--theta", "0", "--theta", &t,
        "--theta-weight", "0.500005", "--theta-weight", "0.499995", "--c1", "0.7555",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["classification"]["uniquely_irpo"], "train-sharing");
}

#[test]
fn classify_csv_has_a_row_per_contract() {
    let out = predshare(&["classify", "--alpha", "0.7", "--beta", "0.6", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn verify_single_suite_passes() {
    let out = predshare(&["verify", "--only", "closed-form"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["seed"].is_u64());
}

#[test]
fn flipped_threshold_fails_verification() {
    let out = predshare(&["verify", "--only", "closed-form", "--threshold-reading", "at-least-one"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = predshare(&["verify", "--only", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_csv_covers_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let data = dir.path().join("data.csv");
    let out = predshare(&[
        "sweep", "--format", "csv", "--out", path.to_str().unwrap(),
        "--export-dataset", data.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# seed=7"));
    assert_eq!(lines.next().unwrap(), "cost,contract,firm,utility,ir_flag,optimal_flag");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 51 * 4 * 2);
    for c in ["ns", "ts", "is", "fs"] {
        assert_eq!(rows.iter().filter(|r| r.split(',').nth(1) == Some(c)).count(), 102);
    }
    assert!(fs::metadata(&data).unwrap().len() > 0);
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_predshare"))
        .args(["sweep", "--c1-step", "0.5", "--format", "csv"])
        .env("PREDSHARE_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("sweep.csv").exists());
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let target = blocker.join("out.csv");
    let out = predshare(&["sweep", "--c1-step", "0.5", "--format", "csv", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn simulate_is_deterministic() {
    let a = predshare(&["simulate", "--seeds", "1", "--seed", "3"]);
    let b = predshare(&["simulate", "--seeds", "1", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["runs"].as_array().unwrap().len(), 6);
}

#[test]
fn worlds_validation_passes() {
    let out = predshare(&[
        "worlds", "--alpha", "0.7", "--beta", "0.6", "--theta", "0", "--theta", "0.3", "--samples", "200000",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["seed"], 0);
}
