//! End-to-end tests of the `dnhs` binary: exit codes, output formats, and
//! byte-level determinism.

use std::process::{Command, Output};

fn dnhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dnhs"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn partition_single_state_chain() {
    let out = dnhs(&["partition", "--n", "3", "--m", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["poly"], serde_json::json!({"10": "1"}));
}

#[test]
fn partition_matches_hand_expansion() {
    let out = dnhs(&["partition", "--n", "3", "--m", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["poly"], serde_json::json!({"6": "2", "7": "4", "10": "2"}));
}

#[test]
fn sites_csv_table() {
    let out = dnhs(&["sites", "--n", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,theta,cos2theta");
    assert_eq!(lines[1], "1,0,1");
    let mid: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(mid[0], "2");
    assert!((mid[1].parse::<f64>().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    assert!(mid[2].parse::<f64>().unwrap().abs() < 1e-15);
    assert!(lines[3].starts_with("3,1.57079632679489"));
    assert!(lines[3].ends_with(",-1"));
}

#[test]
fn chain_spectrum_energies() {
    let out = dnhs(&["chain-spectrum", "--n", "3", "--m", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let energies: Vec<i64> = v["energies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_i64().unwrap())
        .collect();
    assert_eq!(energies, vec![6, 6, 7, 7, 7, 7, 10, 10]);
}

#[test]
fn density_counts() {
    let out = dnhs(&["density", "--n", "3", "--m", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "energy,count\n6,2\n7,4\n10,2\n");
}

#[test]
fn dyn_series_constant_term_vanishes() {
    let out = dnhs(&["dyn-series", "--n", "3", "--m", "2", "--qmax", "12"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["coeffs"].get("0").is_none());
    assert_eq!(v["coeffs"]["6"], "2");
}

#[test]
fn scalar_series_low_terms() {
    let out = dnhs(&["scalar-series", "--n", "3", "--qmax", "10"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coeffs"]["0"], "1");
    assert_eq!(v["coeffs"]["3"], "2");
    assert_eq!(v["coeffs"]["6"], "3");
}

#[test]
fn unknown_command_is_usage_error() {
    let out = dnhs(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_required_flag_is_usage_error() {
    let out = dnhs(&["partition", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_fast_passes() {
    let out = dnhs(&["verify", "fast", "--n", "4", "--m", "2", "--seed", "42"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.contains("PASS")));
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["partition", "--n", "4", "--m", "3"],
        vec!["sites", "--n", "8", "--format", "csv"],
        vec!["geometry", "--n", "3", "--samples", "2000", "--seed", "7"],
        vec!["dunkl-verify", "--n", "3", "--bound", "2", "--a", "5/2"],
    ] {
        let a = dnhs(&args);
        let b = dnhs(&args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?} not byte-stable");
    }
}

#[test]
fn dunkl_verify_reports_triangular() {
    let out = dnhs(&["dunkl-verify", "--n", "3", "--bound", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["delta0"]["status"], "triangular");
    assert_eq!(v["delta1"]["status"], "triangular");
    assert!(v["collocation_max_rel_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn geometry_reports_clean_tiling() {
    let out = dnhs(&["geometry", "--n", "3", "--samples", "5000", "--seed", "42"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tiling"]["failures"], 0);
    assert_eq!(v["domain_polyhedron"]["faces"].as_array().unwrap().len(), 12);
    assert_eq!(
        v["domain_polyhedron"]["vertices"].as_array().unwrap().len(),
        14
    );
}

#[test]
fn impurity_table() {
    let out = dnhs(&["impurity", "--n", "3", "--m", "2", "--epsilon", "-1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,defect,uncorrected\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn bc_sites_via_flags() {
    let out = dnhs(&["sites", "--n", "1", "--beta", "1", "--beta-prime", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let theta = v["sites"][0]["theta"].as_f64().unwrap();
    assert!((theta - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
}

#[test]
fn output_to_file() {
    let dir = std::env::temp_dir().join("dnhs-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z.json");
    let out = dnhs(&["partition", "--n", "3", "--m", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["poly"]["10"], "1");
    std::fs::remove_dir_all(&dir).ok();
}
