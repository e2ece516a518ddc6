//! End-to-end behaviour of the `nanotemp` binary.

use std::process::{Command, Output};

use approx::assert_relative_eq;
use serde_json::Value;

fn nanotemp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nanotemp"))
        .args(args)
        .env_remove("NANOTEMP_MATERIALS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(s: &str) -> Option<f64> {
    (!s.is_empty()).then(|| s.parse().unwrap())
}

#[test]
fn csv_and_json_carry_identical_values() {
    let args = ["nmin-curve", "--tmin", "1e-3", "--tmax", "1e3", "--points", "37", "--material", "iron"];
    let csv = stdout(&nanotemp(&args));
    let json: Value = serde_json::from_str(&stdout(&nanotemp(&[&args[..], &["--format", "json"]].concat()))).unwrap();
    let records = json.as_array().unwrap();

    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t_ratio,bound_cond1,bound_cond2,n_min,l_min_m"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 37);
    assert_eq!(records.len(), 37);
    for (line, rec) in rows.iter().zip(records) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 5);
        assert_eq!(field(f[0]), rec["t_ratio"].as_f64());
        assert_eq!(field(f[1]), rec["bound_cond1"].as_f64());
        assert_eq!(field(f[2]), rec["bound_cond2"].as_f64());
        assert_eq!(f[3].parse::<u64>().ok(), rec["n_min"].as_u64());
        assert_eq!(field(f[4]), rec["l_min_m"].as_f64());
    }
    // the bound-1 column empties exactly above the ebar = 1/4 point
    let empty = rows.iter().filter(|l| l.split(',').nth(1) == Some("")).count();
    assert!(empty > 0 && empty < 37);
}

#[test]
fn output_is_bit_stable() {
    let args = ["nmin-curve", "--points", "200"];
    let first = nanotemp(&args).stdout;
    let second = nanotemp(&args).stdout;
    assert_eq!(first, second);
    assert_eq!(first.iter().filter(|&&b| b == b'\n').count(), 201);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let args = ["nmin-curve", "--points", "11", "--alpha", "20", "--delta", "0.05"];
    let streamed = nanotemp(&args).stdout;
    let out = nanotemp(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), streamed);
}

#[test]
fn silicon_at_one_kelvin() {
    let text = stdout(&nanotemp(&["lmin", "--material", "silicon", "--T", "1"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("material,T_K,t_ratio,bound_cond1,bound_cond2,n_min,l_min_m"));
    let f: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(f[0], "silicon");
    let l: f64 = f[6].parse().unwrap();
    assert_relative_eq!(l, 0.0979, max_relative = 1e-3);

    // the same point addressed as T / Theta
    let json: Value = serde_json::from_str(&stdout(&nanotemp(&[
        "lmin",
        "--material",
        "silicon",
        "--t-ratio",
        &(1.0f64 / 645.0).to_string(),
        "--format",
        "json",
    ])))
    .unwrap();
    assert_relative_eq!(json["l_min_m"].as_f64().unwrap(), l, max_relative = 1e-12);
    assert_relative_eq!(json["T_K"].as_f64().unwrap(), 1.0, max_relative = 1e-12);
}

#[test]
fn ebar_at_the_debye_temperature() {
    let v: f64 = stdout(&nanotemp(&["ebar", "--t-ratio", "1"])).trim().parse().unwrap();
    assert!((v - 0.77751).abs() < 1e-5);
    let k: f64 = stdout(&nanotemp(&["ebar", "--T", "470", "--material", "iron"])).trim().parse().unwrap();
    assert_eq!(k, v);
}

#[test]
fn user_material_table_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("materials.json");
    std::fs::write(&path, r#"[{"name": "silicon", "theta_K": 645.0, "a0_angstrom": 4.8}, {"name": "toy", "theta_K": 100.0, "a0_angstrom": 1.0}]"#)
        .unwrap();
    let run = |name: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_nanotemp"))
            .args(["lmin", "--material", name, "--T", "1", "--format", "json"])
            .env("NANOTEMP_MATERIALS", &path)
            .output()
            .unwrap();
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        v["l_min_m"].as_f64().unwrap()
    };
    // user entries shadow the built-ins
    assert_relative_eq!(run("silicon"), 2.0 * 0.09787759128, max_relative = 1e-12);
    assert!(run("toy") > 0.0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["ebar", "--t-ratio", "1", "--T", "300", "--material", "iron"][..],
        &["ebar", "--T", "300"],
        &["lmin", "--material", "iron"],
        &["nmin-curve", "--format", "xml"],
        &["nmin-curve", "--points", "many"],
        &["frobnicate"],
        &["verify", "--d", "1"],
    ] {
        assert_eq!(nanotemp(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_one_and_name_the_precondition() {
    for (args, needle) in [
        (&["ebar", "--t-ratio", "-1"][..], "T/Theta must be positive"),
        (&["lmin", "--material", "iron", "--T", "0"], "temperature must be positive"),
        (&["lmin", "--material", "unobtainium", "--T", "1"], "unknown material"),
        (&["nmin-curve", "--tmin", "1", "--tmax", "0.1"], "tmin <= tmax"),
        (&["nmin-curve", "--alpha", "0.5"], "alpha must be >= 1"),
        (&["nmin-curve", "--delta", "1.5"], "delta must lie in (0, 1)"),
        (&["nmin-curve", "--material", "iron", "--materials", "/nonexistent.json"], "material table"),
    ] {
        let out = nanotemp(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn verify_exit_status_tracks_failures() {
    let ok = nanotemp(&["verify", "--n", "1", "--groups", "4,5"]);
    let text = stdout(&ok);
    assert!(text.lines().any(|l| l.starts_with("PASS skewness decreasing")));
    assert!(!text.contains("FAIL"));

    // two groups share both couplings, so the cross-boundary identity breaks
    let bad = nanotemp(&["verify", "--n", "1", "--groups", "2", "--max-dim", "64"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("FAIL moment identities n=1 N_G=2"));
}
