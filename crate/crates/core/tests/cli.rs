use std::fs;
use std::process::{Command, Output};

use squeezed_qsl::scan::csv::{columns, CsvTable};
use squeezed_qsl::scan::Model;

fn qsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsl"))
        .args(args)
        .output()
        .expect("qsl binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn scan_preset_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1b.csv");
    let out = qsl(&["scan", "--preset", "fig1b", "--grid", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = CsvTable::parse(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(table.columns, columns(Model::Jc));
    assert_eq!(table.rows.len(), 25);
    assert!(table.config.contains(&("row_count".to_string(), "5".to_string())));
}

#[test]
fn scan_to_stdout_matches_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let args = ["scan", "--preset", "fig2", "--grid", "6", "--threads", "2"];
    let to_file = qsl(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert!(to_file.status.success());
    let to_stdout = qsl(&args);
    assert!(to_stdout.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), stdout(&to_stdout));
}

#[test]
fn repeated_scans_are_byte_identical() {
    let a = qsl(&["scan", "--preset", "fig1a", "--grid", "8"]);
    let b = qsl(&["scan", "--preset", "fig1a", "--grid", "8", "--threads", "1"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.json");
    fs::write(
        &cfg,
        r#"{"model": "dephasing", "r": 0.5, "theta": 0, "eta": 1, "tau": 2,
            "col_axis": "s", "col_min": 0.5, "col_max": 3.5, "col_count": 4}"#,
    )
    .unwrap();
    let out = qsl(&["scan", "--config", cfg.to_str().unwrap(), "--set", "r=0", "--set", "col_count=3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = CsvTable::parse(&stdout(&out)).unwrap();
    assert_eq!(table.rows.len(), 3);
    assert!(table.column_f64("r").unwrap().iter().all(|&r| r == 0.0));
    assert_eq!(table.column_f64("s").unwrap(), vec![0.5, 2.0, 3.5]);
}

#[test]
fn scan_rejects_bad_input() {
    assert!(!qsl(&["scan", "--preset", "fig9"]).status.success());
    assert!(!qsl(&["scan"]).status.success());
    let out = qsl(&["scan", "--preset", "fig1a", "--set", "no_equals_sign"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("key=value"));
}

#[test]
fn verify_reports_json() {
    let out = qsl(&["verify", "norms"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["suite"], "norms");
    assert_eq!(report["pass"], true);
    assert!(report["checks"].as_array().unwrap().len() >= 4);
    assert!(!qsl(&["verify", "everything"]).status.success());
}

#[test]
fn point_prints_result() {
    let out = qsl(&[
        "point", "--model", "jc", "--r", "0", "--theta", "0", "--gamma0", "1", "--lambda", "1", "--tau", "1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ratio = v["ratio"].as_f64().unwrap();
    assert!(ratio > 0.0 && ratio <= 1.0);
    assert_eq!(v["tight_norm"], "op");

    let out = qsl(&["point", "--model", "dephasing", "--r", "0", "--theta", "0", "--eta", "1", "--s", "1", "--tau", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn point_requires_model_parameters() {
    let out = qsl(&["point", "--model", "jc", "--r", "0", "--theta", "0", "--tau", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma0"));
    let out = qsl(&["point", "--model", "jc", "--r", "-1", "--theta", "0", "--gamma0", "1", "--lambda", "1", "--tau", "1"]);
    assert!(!out.status.success());
}
