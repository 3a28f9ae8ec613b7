//! End-to-end tests of the command-line binary: exit codes, JSON shape,
//! and byte-stable output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_freediv"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("freediv-cli-{}-{}", std::process::id(), name));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_single_family_succeeds() {
    let out = run(&["verify", "--family", "sym", "--m", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::json!(true));
    assert_eq!(v["divisor"]["classification"], serde_json::json!("free"));
}

#[test]
fn verify_output_is_byte_stable() {
    let a = run(&["verify", "--family", "mod-lu", "--m", "3"]);
    let b = run(&["verify", "--family", "mod-lu", "--m", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // Pretty output parses to the same value.
    let p = run(&["verify", "--family", "mod-lu", "--m", "3", "--pretty"]);
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vp: serde_json::Value = serde_json::from_slice(&p.stdout).unwrap();
    assert_eq!(va, vp);
}

#[test]
fn verify_all_reports_every_family() {
    let out = run(&["verify", "--all", "--max-m", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::json!(true));
    let results = v["results"].as_array().unwrap();
    // Families with min size <= 3, summed over admissible sizes up to 3.
    assert_eq!(results.len(), 18);
    assert!(results.iter().all(|r| r["ok"] == serde_json::json!(true)));
}

#[test]
fn unknown_family_is_a_usage_error() {
    let out = run(&["verify", "--family", "nope", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tower_gen_emits_matrix_and_divisor() {
    let out = run(&["tower-gen", "--family", "sym", "--m", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["saito_matrix"]["block_sizes"], serde_json::json!([1, 2]));
    assert_eq!(v["divisor"]["family"], serde_json::json!("sym"));
}

#[test]
fn bracket_table_is_closed() {
    let out = run(&["bracket-table", "--family", "skew-nonlinear", "--m", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["closed"], serde_json::json!(true));
}

#[test]
fn factor_lu_roundtrip() {
    let input = write_temp(
        "lu.json",
        r#"{"rows":2,"cols":2,"entries":[[1,0],[2,0],[3,0],[4,0]]}"#,
    );
    let out = run(&["factor", "--type", "lu", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["residual"], serde_json::json!(0.0));
    assert_eq!(v["factors"][0][0], serde_json::json!("B"));
    let _ = std::fs::remove_file(input);
}

#[test]
fn factor_on_variety_exits_three() {
    let input = write_temp(
        "sing.json",
        r#"{"rows":2,"cols":2,"entries":[[0,0],[1,0],[1,0],[0,0]]}"#,
    );
    let out = run(&["factor", "--type", "cholesky", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("det(A^(1))"), "stderr: {}", err);
    let _ = std::fs::remove_file(input);
}

#[test]
fn conditions_lists_minors_in_order() {
    let input = write_temp(
        "cond.json",
        r#"{"rows":2,"cols":2,"entries":[[1,0],[1,0],[0,0],[1,0]]}"#,
    );
    let out = run(&["conditions", "--type", "mod-lu", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = v["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c[0].as_str().unwrap())
        .collect();
    assert_eq!(names, vec!["det(A^(1))", "det(A^(2))", "det(Ahat^(1))"]);
    let _ = std::fs::remove_file(input);
}

#[test]
fn residual_tolerance_env_override() {
    let input = write_temp(
        "tol.json",
        r#"{"rows":2,"cols":2,"entries":[[4,0],[2,0],[2,0],[3,0]]}"#,
    );
    let out = bin()
        .args(["factor", "--type", "cholesky", "--input", input.to_str().unwrap()])
        .env("SAITO_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(out.status.success());
    let _ = std::fs::remove_file(input);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let input = write_temp("bad.json", "{not json");
    let out = run(&["factor", "--type", "lu", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_file(input);
}
