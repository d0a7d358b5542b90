use std::fs;
use std::process::Command;

use serde_json::Value;

fn hardy(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hardy"))
        .args(args)
        .output()
        .unwrap()
}

fn json_stdout(args: &[&str]) -> Value {
    let out = hardy(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn scan_writes_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = hardy(&[
        "scan",
        "--k",
        "1",
        "--t-min",
        "0.1",
        "--t-max",
        "0.9",
        "--steps",
        "81",
        "--visibility",
        "0.96",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 82);
    assert_eq!(lines[0], "t,P_K,S_K,theta_0,theta_1");
    let ts: Vec<f64> = lines[1..]
        .iter()
        .map(|l| {
            assert_eq!(l.split(',').count(), 3 + 2);
            l.split(',').next().unwrap().parse().unwrap()
        })
        .collect();
    assert!(ts.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn ideal_scan_has_s_equal_to_hardy_fraction() {
    let out = hardy(&["scan", "--k", "3", "--steps", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split(',').count(), 3 + 4);
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[1] - cols[2]).abs() < 1e-12, "{line}");
    }
}

#[test]
fn scan_json_format() {
    let v = json_stdout(&["scan", "--k", "2", "--steps", "5", "--format", "json"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["thetas"].as_array().unwrap().len(), 3);
}

#[test]
fn lhv_reports_bound_and_count() {
    let v = json_stdout(&["lhv", "--k", "1"]);
    assert_eq!(v["lhv_max"], 0.0);
    assert_eq!(v["strategies"], 16);
}

#[test]
fn optimize_reports_optimum() {
    let v = json_stdout(&["optimize", "--k", "1"]);
    let t = v["t_star"].as_f64().unwrap();
    let s = v["s_star"].as_f64().unwrap();
    assert!((0.45..=0.47).contains(&t), "t* = {t}");
    assert!((s - 0.0902).abs() < 1e-4);
    assert_eq!(v["angles"].as_array().unwrap().len(), 2);
    assert!(v["angles"][0]["degrees"].as_f64().is_some());
}

#[test]
fn simulate_reports_schema() {
    let v = json_stdout(&[
        "simulate", "--k", "1", "--t", "0.46", "--n", "5000", "--seed", "9",
    ]);
    for field in [
        "config",
        "angles",
        "probabilities",
        "s_value",
        "uncertainties",
        "seed",
    ] {
        assert!(v.get(field).is_some(), "missing {field}");
    }
    assert_eq!(v["seed"], 9);
    assert_eq!(v["probabilities"].as_array().unwrap().len(), 4);
    assert_eq!(v["probabilities"][0]["term"], "P(a1,b1)");
    assert!(v["uncertainties"]["s_value"].as_f64().unwrap() > 0.0);
    assert!(v["uncertainties"]["model"]
        .as_str()
        .unwrap()
        .contains("binomial"));
}

#[test]
fn angles_csv_and_json() {
    let out = hardy(&["angles", "--k", "1", "--t", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("k,theta_rad"));
    assert_eq!(text.lines().count(), 3);

    let v = json_stdout(&["angles", "--k", "1", "--t", "1"]);
    let deg = v["angles"][1]["degrees"].as_f64().unwrap();
    assert!((deg + 45.0).abs() < 1e-9);
}

#[test]
fn usage_error_exits_2() {
    for args in [
        &["scan", "--k", "0"][..],
        &["angles", "--k", "1", "--t", "2"],
        &["nope"],
        &["lhv", "--k", "1", "--x"],
    ] {
        let out = hardy(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn io_failure_exits_1() {
    let out = hardy(&["lhv", "--k", "1", "--out", "/nonexistent/dir/lhv.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}
