use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icekernel"))
        .args(args)
        .env("ICEKERNEL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value_of(out: &Output) -> f64 {
    stdout(out).trim().parse().unwrap()
}

#[test]
fn refined_half_turn_table_as_json() {
    let out = run(&["--format", "json", "table", "H_refined", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &v[0];
    assert_eq!(row["order"], 4);
    assert_eq!(row["class"], "half-turn");
    assert_eq!(row["counts"], serde_json::json!([2, 3, 3, 2]));
    assert_eq!(row["total"], 10);
}

#[test]
fn totals_over_a_range() {
    let out = run(&["--format", "csv", "table", "A", "1..5"]);
    assert_eq!(out.status.code(), Some(0));
    let totals: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().to_string())
        .collect();
    assert_eq!(totals, ["1", "2", "7", "42", "429"]);
}

#[test]
fn b_polynomial_display() {
    let out = run(&["table", "genpoly", "B", "2"]);
    assert_eq!(stdout(&out).trim(), "(2 + t + 2t^2)/5");
}

#[test]
fn order_one_values() {
    let z = run(&["eval", "Z", "--n", "1", "--eta", "2.0943951", "--u", "0.1,0.3"]);
    assert!((value_of(&z) - 2.0943951f64.sin()).abs() < 1e-11);
    let v = run(&["eval", "V", "--n", "1", "--eta", "2.0943951", "--u", "0.1,0.3"]);
    let expect = 2.0 * (2.0943951f64 / 2.0).sin() * 0.2f64.cos();
    assert!((value_of(&v) - expect).abs() < 1e-11);
}

#[test]
fn bruteforce_flag_agrees_with_determinant() {
    let u = "0.1,0.25,-0.1,0.3,0.05,-0.2";
    let det = value_of(&run(&["eval", "Z", "--n", "3", "--u", u]));
    let brute = value_of(&run(&["eval", "Z", "--n", "3", "--bruteforce", "--u", u]));
    assert!((det - brute).abs() <= 1e-9 * brute.abs());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "refined", "--n", "4"]).status.code(), Some(0));
    assert_eq!(run(&["table", "nonsense", "3"]).status.code(), Some(2));
    assert_eq!(run(&["--brute-cap", "9", "table", "A", "3"]).status.code(), Some(2));
    assert_eq!(run(&["--tol", "-1", "verify", "fourier"]).status.code(), Some(2));
    let singular = run(&["eval", "Z", "--n", "2", "--u", "0.1,0.1,0.2,0.3"]);
    assert_eq!(singular.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&singular.stderr).contains("singular"));
    // an absurd tolerance makes residual checks fail
    assert_eq!(run(&["--tol", "1e-30", "verify", "fourier", "--n", "2"]).status.code(), Some(1));
}

#[test]
fn verify_report_is_deterministic() {
    let args = ["--seed", "7", "--format", "json", "verify", "determinants", "--n", "3"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("icekernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    let out = run(&["--format", "json", "--out", path.to_str().unwrap(), "table", "H", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["total"], 140);
    std::fs::remove_dir_all(&dir).unwrap();
}
