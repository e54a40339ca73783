use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tunneling")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn results<'a>(report: &'a Value, name: &str) -> Vec<&'a Value> {
    report["results"].as_array().unwrap().iter().filter(|r| r["name"] == name).collect()
}

#[test]
fn report_schema() {
    let r = json(&["action", "--omega", "2"]);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["subcommand", "inputs", "results", "status"]);
    assert_eq!(r["subcommand"], "action");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["inputs"]["omega"], 2.0);
    for entry in r["results"].as_array().unwrap() {
        let keys: Vec<&str> = entry.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["name", "value", "paper_ref", "method", "tolerance"]);
        assert!(entry["tolerance"].is_number());
    }
    let methods: Vec<&str> = results(&r, "s_e0").iter().map(|e| e["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["closed_form", "integrated"]);
}

#[test]
fn det_ratio_reports_r_and_q() {
    let r = json(&["det-ratio", "--omega", "1"]);
    for e in results(&r, "r_value") {
        assert!((e["value"].as_f64().unwrap() - 0.083_333_3).abs() < 1e-7);
    }
    let q = results(&r, "q_value")[0]["value"].as_f64().unwrap();
    assert!((q - 0.020_833_3).abs() < 1e-7);
}

#[test]
fn zeta_reports_both_methods() {
    let r = json(&["zeta", "--ell", "2", "--s", "0"]);
    let z = results(&r, "zeta_r");
    let methods: Vec<&str> = z.iter().map(|e| e["method"].as_str().unwrap()).collect();
    assert!(methods.contains(&"closed_form") && methods.contains(&"k_integral"));
    for e in z {
        assert!((e["value"].as_f64().unwrap() + 1.0).abs() < 1e-10);
    }
    let zp = results(&r, "zeta_r_prime_at_zero");
    assert_eq!(zp.len(), 2);
}

#[test]
fn zeta_accepts_negative_s() {
    let r = json(&["zeta", "--ell", "1", "--s", "-0.25"]);
    assert_eq!(r["inputs"]["s"], -0.25);
}

#[test]
fn splitting_with_oracle() {
    let r = json(&["splitting", "--omega", "10", "--with-oracle"]);
    let de = results(&r, "delta_e_inst")[0]["value"].as_f64().unwrap();
    assert!((de - 0.090_821_466).abs() < 1e-8);
    let ratio = results(&r, "ratio")[0]["value"].as_f64().unwrap();
    assert!((0.75..=1.05).contains(&ratio));
    assert_eq!(results(&r, "delta_e_oracle")[0]["method"], "oracle");
}

#[test]
fn splitting_without_oracle_has_no_oracle_fields() {
    let r = json(&["splitting", "--omega", "6", "--T", "3"]);
    assert!(results(&r, "ratio").is_empty());
    assert_eq!(results(&r, "validity_diagnostic").len(), 1);
}

#[test]
fn sweep_csv() {
    let out = run(&["sweep", "--omega-min", "8", "--omega-max", "12", "--omega-step", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "omega,delta_e_inst,delta_e_oracle,ratio,d,s_e0");
    assert_eq!(lines.len(), 4);
    let ratios: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert!(ratios.windows(2).all(|w| (w[1] - 1.0).abs() <= (w[0] - 1.0).abs()));
    let omegas: Vec<f64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(omegas, [8.0, 10.0, 12.0]);
    // 17 significant digits
    let first = lines[1].split(',').nth(1).unwrap();
    assert_eq!(first.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
}

#[test]
fn csv_values_round_trip() {
    let out = run(&["oscillator", "--nu", "1", "--T", "1", "--output", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().nth(1).unwrap();
    let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
    let exact = (1.0 / std::f64::consts::PI).sqrt() * (2.0 * 1f64.sinh()).powf(-0.5);
    assert!((v - exact).abs() <= 2.0 * f64::EPSILON * exact);
}

#[test]
fn empty_sweep_is_header_only() {
    let out = run(&["sweep", "--omega-min", "5", "--omega-max", "4", "--omega-step", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "omega,delta_e_inst,delta_e_oracle,ratio,d,s_e0\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["sweep", "--omega-min", "x", "--omega-max", "4", "--omega-step", "1"][..],
        &["sweep", "--omega-min", "1", "--omega-max", "4", "--omega-step", "0"],
        &["action"],
        &["action", "--omega", "inf"],
        &["nosuch"],
        &["zeta", "--tol", "-1"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn numeric_failures_exit_one_with_error_object() {
    let out = run(&["action", "--omega", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["kind"], "domain");
    assert!(r["results"].as_array().unwrap().is_empty());

    let out = run(&["det-ratio", "--ell", "1", "--L", "20", "--N", "16"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["error"]["kind"], "not_isolated");

    let out = run(&["zeta", "--ell", "3", "--s", "-2", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("status,kind,message\nerror,"));
}

#[test]
fn out_path_and_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["zeta", "--s", "1", "--tol", "1e-9", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["inputs"]["tol"], 1e-9);
    assert_eq!(results(&r, "zeta_r").len(), 3);
}

#[test]
fn spectrum_and_profile() {
    let r = json(&["spectrum", "--ell", "2", "--k", "1"]);
    let grid = results(&r, "grid_eigenvalue[1]")[0]["value"].as_f64().unwrap();
    assert!((grid - 3.0).abs() < 1e-3);
    let rule = results(&r, "density_sum_rule")[0]["value"].as_f64().unwrap();
    assert!((rule + 2.0).abs() < 1e-8);
    let p = json(&["profile", "--omega", "2", "--tau", "0.5", "--tau-c", "0.5"]);
    assert_eq!(results(&p, "x_c")[0]["value"], 0.0);
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["det-ratio", "--ell", "2", "--omega", "3", "--L", "6"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
