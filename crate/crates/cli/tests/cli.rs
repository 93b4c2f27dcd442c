use std::process::{Command, Output};

use serde_json::Value;

fn lerch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lerch"))
        .args(args)
        .env_remove("LERCH_KERNEL_MAX_EVALS")
        .output()
        .expect("binary runs")
}

fn value(out: &Output) -> (f64, f64) {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("one JSON record");
    (v["value"]["re"].as_f64().unwrap(), v["value"]["im"].as_f64().unwrap())
}

fn direct_polylog(k: i32, x: f64) -> f64 {
    (1..200).map(|j| x.powi(j) / (j as f64).powi(k)).sum()
}

#[test]
fn polylog_matches_direct_sum() {
    let (re, im) = value(&lerch(&["polylog", "-k", "2", "-m", "-1"]));
    assert!((re - direct_polylog(2, (-1f64).exp())).abs() < 1e-12);
    assert_eq!(im, 0.0);
}

#[test]
fn hurwitz_at_zero_is_half_minus_b() {
    let (re, _) = value(&lerch(&["hurwitz-neg", "-k", "0", "-b", "0.25"]));
    assert_eq!(re, 0.25);
}

#[test]
fn hp_constant_at_one_half() {
    // -gamma - psi(3/2) = 2 ln 2 - 2
    let (re, _) = value(&lerch(&["hp-const", "-b", "0.5"]));
    assert!((re - (2.0 * 2f64.ln() - 2.0)).abs() < 1e-10);
}

#[test]
fn complex_arguments_parse() {
    let closed = value(&lerch(&["partial", "--kind", "exp", "-b", "0.5", "-m", "-1+2I", "-k", "2", "-n", "10"]));
    let direct =
        value(&lerch(&["partial", "--kind", "exp", "-b", "0.5", "-m", "-1+2i", "-k", "2", "-n", "10", "--direct"]));
    assert!((closed.0 - direct.0).abs() < 1e-12 && (closed.1 - direct.1).abs() < 1e-12);
    assert!(direct.1.abs() > 1e-3);
}

#[test]
fn series_record_carries_regime() {
    let out = lerch(&["series", "--trig", "sin", "--order", "1", "-m", "4"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["value"]["re"].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert_eq!(v["regime"], "integer_b");
}

#[test]
fn exit_codes() {
    assert_eq!(lerch(&["polylog", "-k", "x", "-m", "-1"]).status.code(), Some(64));
    assert_eq!(lerch(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(lerch(&["--help"]).status.code(), Some(0));
    assert_eq!(lerch(&["polylog", "-k", "2", "-m", "0"]).status.code(), Some(2));
    assert_eq!(lerch(&["series", "--trig", "cos", "--order", "1", "-m", "1", "-b", "0.3"]).status.code(), Some(2));
    assert_eq!(lerch(&["--rel-tol", "-1", "polylog", "-k", "2", "-m", "-1"]).status.code(), Some(64));
}

#[test]
fn budget_from_environment_is_a_convergence_failure() {
    let out = Command::new(env!("CARGO_BIN_EXE_lerch"))
        .args(["hp-const", "-b", "0.3"])
        .env("LERCH_KERNEL_MAX_EVALS", "15")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    // an explicit flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_lerch"))
        .args(["--max-evals", "100000", "hp-const", "-b", "0.3"])
        .env("LERCH_KERNEL_MAX_EVALS", "15")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn config_file_is_read() {
    let dir = std::env::temp_dir().join(format!("lerch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"max_evals": 15}"#).unwrap();
    let out = lerch(&["--config", good.to_str().unwrap(), "hp-const", "-b", "0.3"]);
    assert_eq!(out.status.code(), Some(3));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"max_evals": 15, "colour": "blue"}"#).unwrap();
    let out = lerch(&["--config", bad.to_str().unwrap(), "hp-const", "-b", "0.3"]);
    assert_eq!(out.status.code(), Some(64));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_is_deterministic_and_summarised() {
    let run = || lerch(&["verify", "oracle", "--seed", "7"]);
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let (last, reports) = lines.split_last().unwrap();
    assert_eq!(*last, format!("{}/{}", reports.len(), reports.len()));
    for line in reports {
        let r: Value = serde_json::from_str(line).unwrap();
        for field in ["identity_id", "params", "formula_value", "oracle_value", "abs_err", "rel_err", "pass"] {
            assert!(r.get(field).is_some(), "{field} missing from {line}");
        }
        assert!(r["formula_value"].get("re").is_some());
    }
}

#[test]
fn verify_exceptions_are_reported_not_omitted() {
    let out = lerch(&["verify", "series_limits", "--grid", "small"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let skipped: Vec<Value> = text
        .lines()
        .filter_map(|l| serde_json::from_str::<Value>(l).ok())
        .filter(|r| r.get("skipped_reason").is_some())
        .collect();
    assert!(skipped.iter().any(|r| r["identity_id"] == "series-cos-odd-exception"));
    assert!(skipped.iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_csv_flattens_complex_values() {
    let out = lerch(&["verify", "hurwitz", "--grid", "small", "--format", "csv"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    for col in ["identity_id", "formula_re", "formula_im", "oracle_re", "oracle_im", "pass"] {
        assert!(headers.iter().any(|h| h == col), "{col}");
    }
    let rows = reader.records().count();
    assert!(rows > 0);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains(&format!("{rows}/{rows}")));
}
