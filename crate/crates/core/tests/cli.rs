//! End-to-end runs of the `caralab` binary: exit codes, reports, tables,
//! determinism and the seed environment variable.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn model(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "models", &format!("{name}.json")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caralab"))
        .args(args)
        .env_remove("CARALAB_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_exit_codes_follow_input_class() {
    assert_eq!(code(&run(&["verify", &model("swap"), "--pairs", "100", "--scan", "200"])), 0);
    assert_eq!(code(&run(&["verify", &model("shear")])), 3);
    assert_eq!(code(&run(&["verify", &model("y_out_of_range")])), 4);
    assert_eq!(code(&run(&["verify", "/nonexistent/model.json"])), 2);
    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn classify_reports_expected_classes() {
    for (name, class) in [
        ("swap", "purely_singular"),
        ("projection", "regular"),
        ("mixed_regular", "regular"),
        ("mixed_singular", "singular"),
    ] {
        let out = run(&["classify", &model(name)]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let report = json(&out);
        assert_eq!(report["classification"], class, "{name}");
        assert_eq!(report["consistent"], true, "{name}");
    }
}

#[test]
fn family_half_reports_nonlinear_defect() {
    let out = run(&["family", "--y", "0.5"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let defect = report["linearity_defect"].as_f64().unwrap();
    assert!((defect - 1.0 / 3.0).abs() < 1e-6, "defect {defect}");
    assert!((report["alpha"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(code(&run(&["family", "--y", "1.5"])), 2);
}

#[test]
fn derivative_on_rotation_model() {
    let out = run(&["derivative", &model("rotation"), "--delta=-1,-1"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let row = &report["rows"][0];
    let value = row["analytic"][0].as_f64().unwrap();
    assert!((value + 4.0).abs() < 1e-6, "{report}");
}

#[test]
fn suite_zero_count_is_invalid() {
    assert_eq!(code(&run(&["suite", "--count", "0"])), 2);
}

#[test]
fn suite_is_deterministic_per_seed() {
    let a = run(&["suite", "--count", "8", "--seed", "11"]);
    let b = run(&["suite", "--count", "8", "--seed", "11"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["suite", "--count", "8", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn seed_env_var_overrides_default_but_not_flag() {
    let with_env = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_caralab"))
            .args(args)
            .env("CARALAB_SEED", "99")
            .output()
            .unwrap()
    };
    let env_only = json(&with_env(&["suite", "--count", "2"]));
    assert_eq!(env_only["seed"], 99);
    let flag = json(&with_env(&["suite", "--count", "2", "--seed", "5"]));
    assert_eq!(flag["seed"], 5);
    assert_eq!(json(&run(&["suite", "--count", "2"]))["seed"], 7);
}

#[test]
fn json_report_round_trips() {
    let out = run(&["classify", &model("mixed_singular")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    let reparsed: Value = serde_json::from_str(&again).unwrap();
    assert_eq!(parsed, reparsed);
    let alpha = parsed["alpha"].as_f64().unwrap();
    assert_eq!(reparsed["alpha"].as_f64().unwrap(), alpha);
}

#[test]
fn out_and_tables_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let tables = dir.path().join("tables");
    let out = run(&[
        "classify",
        &model("swap"),
        "--out",
        report.to_str().unwrap(),
        "--tables",
        tables.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written["classification"], "purely_singular");
    let csv = std::fs::read_to_string(tables.join("derivatives.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "re_delta1,im_delta1,re_delta2,im_delta2,re_D,im_D");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 6);
    assert!(first.iter().all(|f| f.contains('e') && f.parse::<f64>().is_ok()));
}

#[test]
fn verify_emits_julia_csv() {
    let out = run(&["verify", &model("generic"), "--format", "csv", "--pairs", "50", "--scan", "100"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("t,lhs,rhs,residual\n"));
    assert_eq!(csv.lines().count(), 1 + 17);
}
