//! Integration tests for the command-line binary: golden outputs per
//! subcommand, exit-code contract, determinism, and output-file handling.

use std::process::{Command, Output};

fn polyrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyrad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

const DISK_AT_CENTER: &str =
    r#"{"domain":{"shape":"disk","center":[0.0,0.0],"radius":1.0},"point":[0.0,0.0]}"#;

const TWO_POINT_SYSTEM: &str = r#"{"points":[[1.0,0.0],[0.0,2.0]]}"#;

#[test]
fn bound_golden_plain_and_json() {
    let out = polyrad(&["bound", "--m", "5", "--gamma", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "bound(m=5, gamma=1) = 0.12481908700052499\n");

    let out = polyrad(&["bound", "--m", "5", "--gamma", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"].as_f64().unwrap(), 0.12481908700052499);
    assert_eq!(v["out_of_hypothesis"].as_bool(), Some(false));
    assert!(v["decimal"].as_str().unwrap().len() > 40);
}

#[test]
fn bound_csv_schema() {
    let out = polyrad(&["bound", "--m", "8", "--gamma", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,gamma,bound,out_of_hypothesis"));
    assert_eq!(lines.next(), Some("8,2,0.0010985902452268438,false"));
}

#[test]
fn radius_trivial_disk() {
    let out = polyrad(&["radius", "--json", DISK_AT_CENTER]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "radius = 1.0 (analytic)\n");
}

#[test]
fn radius_wos_reports_interval() {
    let out = polyrad(&[
        "radius",
        "--json",
        DISK_AT_CENTER,
        "--wos",
        "--walks",
        "1000",
        "--eps",
        "1e-3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["method"].as_str(), Some("monte_carlo"));
    let val = v["value"].as_f64().unwrap();
    assert!((val - 1.0).abs() < 0.05);
    assert!(v["ci_low"].as_f64().unwrap() <= val);
    assert!(v["ci_high"].as_f64().unwrap() >= val);
}

#[test]
fn lgamma_golden() {
    let out = polyrad(&["lgamma", "--json", TWO_POINT_SYSTEM, "--gamma", "1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "L^(1) = 3.426927779499263 for the 2-point system\n"
    );
}

#[test]
fn verify_roots_of_unity_configuration() {
    // Five unit-modulus rays, B_0 = Disk(0, 0.4), satellites Disk(a_k, 0.5).
    let mut points = vec![serde_json::json!({"coords": [[0.0, 0.0]]})];
    let mut domains = vec![serde_json::json!({"coords": [
        {"shape": "disk", "center": [0.0, 0.0], "radius": 0.4}
    ]})];
    for k in 0..5 {
        let t = std::f64::consts::TAU * k as f64 / 5.0;
        points.push(serde_json::json!({"coords": [[t.cos(), t.sin()]]}));
        domains.push(serde_json::json!({"coords": [
            {"shape": "disk", "center": [t.cos(), t.sin()], "radius": 0.5}
        ]}));
    }
    let config = serde_json::json!({
        "gamma": 1.0,
        "points": points,
        "domains": domains,
        "radii_method": "analytic",
        "wos": {}
    });
    let out = polyrad(&["verify", "--json", &config.to_string(), "--format", "json"]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["holds"].as_bool(), Some(true));
    assert!((v["j_value"].as_f64().unwrap() - 0.0125).abs() < 1e-14);
}

#[test]
fn sweep_csv_deterministic_and_schema_stable() {
    let args = [
        "sweep", "--m", "6", "--n", "2", "--gamma", "1", "--trials", "20", "--seed", "7",
        "--format", "csv",
    ];
    let a = polyrad(&args);
    let b = polyrad(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "sweep output must be byte-identical");
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("trial,m,n,gamma,j,stderr,bound,slack,holds")
    );
    assert_eq!(lines.count(), 20);
    for (i, line) in text.lines().skip(1).enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 9);
        assert_eq!(cols[0], i.to_string());
        assert_eq!(cols[8], "true");
    }
}

#[test]
fn output_flag_writes_file_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bound.json");
    let out = polyrad(&[
        "bound",
        "--m",
        "5",
        "--gamma",
        "1",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "result should go to the file only");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["value"].as_f64().unwrap(), 0.12481908700052499);
}

#[test]
fn exit_codes() {
    // 1: hypothesis violation in strict mode.
    let out = polyrad(&["bound", "--m", "4", "--gamma", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m must be at least 5"));

    // 0 in lax mode for the same parameters.
    let out = polyrad(&["bound", "--m", "4", "--gamma", "1", "--lax"]);
    assert_eq!(out.status.code(), Some(0));

    // 2: malformed JSON names the position.
    let out = polyrad(&["lgamma", "--json", "{oops", "--gamma", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column"));

    // 2: unreadable input file.
    let out = polyrad(&["verify", "--input", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));

    // 1: validation failure (point outside its domain).
    let bad = r#"{"domain":{"shape":"disk","center":[0.0,0.0],"radius":1.0},"point":[5.0,0.0]}"#;
    let out = polyrad(&["radius", "--json", bad]);
    assert_eq!(out.status.code(), Some(1));
}
