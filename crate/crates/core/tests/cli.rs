use std::path::PathBuf;
use std::process::{Command, Output};

use lpcopula::{CopulaFamily, CopulaModel, FitOptions};
use serde_json::Value;

fn lpcopula(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpcopula"))
        .args(args)
        .output()
        .expect("spawn binary")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = lpcopula(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn simulate_then_fit_matches_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let csv = csv.to_str().unwrap();
    stdout_ok(&[
        "simulate", "--family", "frank", "--param", "6", "--n", "300", "--seed", "4", "--out", csv,
    ]);

    let (u, v): (Vec<f64>, Vec<f64>) = CopulaFamily::Frank { theta: 6.0 }
        .sample(300, 4)
        .unwrap()
        .into_iter()
        .unzip();
    let model = CopulaModel::fit(&u, &v, &FitOptions::with_degree(3)).unwrap();
    let expected = model.comeans().matrix().unwrap();

    let json: Value =
        serde_json::from_str(&stdout_ok(&["fit", csv, "--x", "u", "--y", "v", "--m", "3"])).unwrap();
    assert_eq!(json["n"], 300);
    assert_eq!(json["dims"], serde_json::json!([3, 3]));
    let got: Vec<Vec<f64>> = serde_json::from_value(json["comeans"].clone()).unwrap();
    assert_eq!(got, expected);
}

#[test]
fn grid_formats() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let csv = csv.to_str().unwrap();
    stdout_ok(&["simulate", "--family", "gaussian", "--param", "0.5", "--n", "200", "--out", csv]);

    let tsv = stdout_ok(&["fit", csv, "--x", "u", "--y", "v", "--grid", "4"]);
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines[0], "u\tv\tdensity");
    assert_eq!(lines.len(), 17);

    let matrix = stdout_ok(&["fit", csv, "--x", "u", "--y", "v", "--grid", "4", "--format", "matrix"]);
    assert_eq!(matrix.lines().count(), 4);
    assert!(matrix.lines().all(|l| l.split('\t').count() == 4));
}

#[test]
fn spearman_on_categorical_table() {
    let yates = data("yates.csv");
    let out = stdout_ok(&[
        "spearman",
        &yates,
        "--x",
        "feeding",
        "--y",
        "teeth",
        "--category",
        "feeding=breast,bottle",
        "--category",
        "teeth=normal,malocclusion",
    ]);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert!((r["lp11"].as_f64().unwrap() - 0.2383).abs() < 5e-4);
    assert_eq!(r["n"], 42);
}

#[test]
fn undeclared_text_column_is_a_data_error() {
    let out = lpcopula(&["spearman", &data("yates.csv"), "--x", "feeding", "--y", "teeth"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("feeding"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lpcopula(&["fit"]).status.code(), Some(2));
    assert_eq!(lpcopula(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(lpcopula(&["--help"]).status.code(), Some(0));
}

#[test]
fn tree_over_three_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let mut s = String::from("a,b,c\n");
    for i in 0..200 {
        let a = f64::from(i);
        s.push_str(&format!("{a},{},{}\n", (a * 0.37).sin(), (a * 7.1).cos()));
    }
    std::fs::write(&csv, s).unwrap();
    let out = stdout_ok(&["tree", csv.to_str().unwrap(), "--cols", "a,b,c"]);
    let tree: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(tree["nodes"], serde_json::json!(["a", "b", "c"]));
    assert!(tree["edges"].as_array().unwrap().len() <= 2);
}
