use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn filiform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filiform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn build_f1_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.json");
    let o = filiform(&[
        "build", "--family", "F1", "--n", "8", "--alpha", "4=1", "--theta", "0", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let j = read_json(&out);
    assert_eq!(j["dim"], 8);
    // [e_1, e_2] = α_4 e_4
    let e12 = j["products"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["i"] == 1 && p["j"] == 2)
        .unwrap();
    assert_eq!(e12["out"]["4"], "1");
}

#[test]
fn build_f2_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.json");
    let o = filiform(&[
        "build", "--family", "F2", "--n", "6", "--beta", "4=1,5=2,6=3", "--gamma", "1", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(read_json(&out)["dim"], 6);
}

#[test]
fn build_f3_odd_n_rejects_flag() {
    let o = filiform(&["build", "--family", "F3", "--n", "5", "--alpha-flag", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("alpha=0 for odd n"), "{}", stderr(&o));
}

#[test]
fn build_names_violated_count() {
    let o = filiform(&["build", "--family", "F1", "--n", "8", "--alpha", "1,2,3"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("alpha count must be n-3"), "{}", stderr(&o));
}

#[test]
fn build_accepts_negative_values() {
    let o = filiform(&["build", "--family", "F1", "--n", "8", "--alpha", "4=1,6=-2", "--theta", "-1/2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn analyze_reports_violation() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    fs::write(
        &input,
        r#"{"dim": 2, "products": [{"i": 1, "j": 1, "out": {"1": "1"}}]}"#,
    )
    .unwrap();
    let o = filiform(&["analyze", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("(1, 1, 1)"), "{}", stderr(&o));
}

#[test]
fn analyze_round_trip_and_cross_check() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let r = dir.path().join("r.json");
    let o = filiform(&["build", "--family", "F1", "--n", "6", "--alpha", "6=1", "--out", a.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = filiform(&[
        "analyze", "--input", a.to_str().unwrap(), "--report", r.to_str().unwrap(), "--cross-check",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let j = read_json(&r);
    assert_eq!(j["family"], "F1");
    assert_eq!(j["filiform"], true);
    assert_eq!(j["lcs_dims"], serde_json::json!([6, 4, 3, 2, 1, 0]));
    assert_eq!(j["characteristically_nilpotent"], true);
    assert_eq!(j["strongly_nilpotent"], false);
    assert!(j["witness_prederivation"].is_array());
    assert_eq!(j["cross_check"]["agree"], true);
}

#[test]
fn analyze_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    filiform(&["build", "--family", "F2", "--n", "7", "--beta", "4=1", "--out", a.to_str().unwrap()]);
    let r1 = filiform(&["analyze", "--input", a.to_str().unwrap()]);
    let r2 = filiform(&["analyze", "--input", a.to_str().unwrap()]);
    assert_eq!(code(&r1), 0, "{}", stderr(&r1));
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn analyze_missing_file() {
    let o = filiform(&["analyze", "--input", "/nonexistent/x.json"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_even_theorem() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("v.json");
    let o = filiform(&[
        "verify", "--theorem", "4.2", "--n", "8", "--samples", "10", "--seed", "7", "--report",
        r.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let j = read_json(&r);
    assert_eq!(j["theorem"], "4.2");
    assert_eq!(j["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_parity_is_invalid_argument() {
    let o = filiform(&["verify", "--theorem", "4.5", "--n", "9", "--samples", "5", "--seed", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("even n"), "{}", stderr(&o));
}

#[test]
fn verify_theta_independence() {
    let o = filiform(&["verify", "--theorem", "4.7", "--n", "6", "--samples", "3", "--seed", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn verify_unknown_theorem() {
    let o = filiform(&["verify", "--theorem", "9.9", "--n", "8"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_report_is_reproducible() {
    let args = ["verify", "--theorem", "4.3", "--n", "7", "--samples", "6", "--seed", "3"];
    let a = filiform(&args);
    let b = filiform(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn census_runs() {
    let o = filiform(&["census", "--family", "F1", "--n", "7", "--samples", "4", "--seed", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["samples"], 4);
    assert_eq!(j["filiform"], 4);
}

#[test]
fn catalan_value() {
    let o = filiform(&["catalan", "--p", "2", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn catalan_identity_both_forms() {
    let o = filiform(&["catalan", "--p", "2", "--n", "2", "--identity"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("corrected: 4 = 4"), "{s}");
    assert!(s.contains("printed: 3 ≠ 4"), "{s}");
}

#[test]
fn catalan_domain() {
    assert_eq!(code(&filiform(&["catalan", "--p", "1", "--n", "3"])), 1);
    assert_eq!(code(&filiform(&["catalan", "--p", "1", "--n", "3", "--identity"])), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&filiform(&["build", "--n", "8"])), 1);
    assert_eq!(code(&filiform(&["frobnicate"])), 1);
    assert_eq!(code(&filiform(&["--help"])), 0);
}
