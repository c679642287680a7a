use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use torsion_spectral::multilinear::{decompose_torsion, TorsionJson};
use torsion_spectral::sampling::{random_torsion, rng};

fn holst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holst"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn decompose_zero_and_unit_vectorial() {
    let dir = TempDir::new().unwrap();
    let zero = serde_json::to_string(&TorsionJson {
        n: 4,
        a: vec![0.0; 64],
    })
    .unwrap();
    let out = holst(&["decompose", &write(&dir, "zero.json", &zero)]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["norms"]["A"], 0.0);
    assert_eq!(report["pythagoras_residual"], 0.0);

    // A_{xyz} = δ_xy V_z − δ_xz V_y with V = e₁
    let mut a = vec![0.0; 64];
    for x in 0..4 {
        a[x * 16 + x * 4] += 1.0;
        a[x * 16 + x] -= 1.0;
    }
    let text = serde_json::to_string(&TorsionJson { n: 4, a }).unwrap();
    let out_path = dir.path().join("report.json");
    let out = holst(&[
        "decompose",
        &write(&dir, "e1.json", &text),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let v: Vec<f64> = serde_json::from_value(report["components"]["V"].clone()).unwrap();
    assert_eq!(v, vec![1.0, 0.0, 0.0, 0.0]);
    assert_eq!(report["norms"]["T"], 0.0);
    assert_eq!(report["norms"]["S"], 0.0);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = holst(&[
        "decompose",
        &write(&dir, "bad.json", "{\"n\": 4, \"A\": [1, 2"),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let mut a = vec![0.0; 27];
    a[1] = 1.0;
    let text = serde_json::to_string(&TorsionJson { n: 3, a }).unwrap();
    let out = holst(&["decompose", &write(&dir, "sym.json", &text)]);
    assert_eq!(out.status.code(), Some(3));

    let out = holst(&[
        "decompose",
        dir.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let cfg = write(&dir, "neg.json", r#"{"ts": [-0.01, 0.011, 0.012]}"#);
    assert_eq!(
        holst(&["heat-fit", "--config", &cfg]).status.code(),
        Some(2)
    );
    let cfg = write(&dir, "gamma.json", r#"{"gamma": 0}"#);
    assert_eq!(holst(&["holst", "--config", &cfg]).status.code(), Some(2));
    let cfg = write(&dir, "unknown.json", r#"{"gama": 1}"#);
    assert_eq!(holst(&["holst", "--config", &cfg]).status.code(), Some(2));

    assert_eq!(
        holst(&["verify", "--suite", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(holst(&["verify", "--count", "0"]).status.code(), Some(2));
    let out = holst(&[
        "verify",
        "--suite",
        "pointwise",
        "--count",
        "5",
        "--corrupt-tolerance",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn pointwise_verify_passes_and_is_reproducible() {
    let args = [
        "verify",
        "--suite",
        "pointwise",
        "--seed",
        "42",
        "--count",
        "100",
    ];
    let first = holst(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = holst(&args);
    assert_eq!(first.stdout, second.stdout);
    let report = stdout_json(&first);
    assert_eq!(report["pass"], true);
    assert_eq!(report["seed"], 42);

    let other = holst(&[
        "verify",
        "--suite",
        "pointwise",
        "--seed",
        "43",
        "--count",
        "100",
    ]);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn heat_fit_json_and_csv() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "heat.json",
        r#"{"torsion": {"constant": {"T": {"1,2,3": 0.3}}}}"#,
    );
    let out = holst(&["heat-fit", "--config", &cfg]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = stdout_json(&out);
    assert_eq!(report["pass"], true);
    let beta2 = report["fit"]["beta2_hat"].as_f64().unwrap();
    let closed = report["beta2_closed"].as_f64().unwrap();
    assert!((beta2 - closed).abs() <= 0.02 * closed.abs());

    let out = holst(&["heat-fit", "--config", &cfg, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('t'));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 8);
    assert!(rows
        .windows(2)
        .all(|w| w[0][0] < w[1][0] && w[0][1] > w[1][1]));
}

fn holst_value(dir: &TempDir, name: &str, gamma: f64, s: Option<&[f64]>) -> f64 {
    let mut constant =
        serde_json::json!({"T": {"1,2,3": 0.3, "2,3,4": -0.1}, "V": [0.0, 0.1, 0.0, 0.2]});
    if let Some(s) = s {
        constant["S"] = serde_json::json!(s);
    }
    let cfg = serde_json::json!({"grid": {"L": 1.0, "N": 8}, "gamma": gamma, "torsion": {"constant": constant}});
    let path = write(dir, name, &cfg.to_string());
    let out = holst(&["holst", "--config", &path]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout_json(&out)["I_H"].as_f64().unwrap()
}

#[test]
fn holst_ignores_one_chirality_at_critical_gamma() {
    let dir = TempDir::new().unwrap();
    let c = decompose_torsion(&random_torsion(&mut rng(21), 4));
    let (plus, minus) = c.chiral.clone().unwrap();
    for (gamma, part, other) in [(1.0, &minus, &plus), (-1.0, &plus, &minus)] {
        let base = holst_value(&dir, "base.json", gamma, None);
        let moved = holst_value(&dir, "moved.json", gamma, Some(part.data()));
        assert!(
            (base - moved).abs() <= 1e-12 * base.abs().max(1.0),
            "γ = {gamma}: {base} vs {moved}"
        );
        // the other chirality does contribute
        let visible = holst_value(&dir, "visible.json", gamma, Some(other.data()));
        assert!((base - visible).abs() > 1e-6);
    }
}

#[test]
fn out_flag_and_config_out_write_files() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("holst.json");
    let cfg = serde_json::json!({"grid": {"L": 1.0, "N": 8}, "out": target});
    let out = holst(&[
        "holst",
        "--config",
        &write(&dir, "cfg.json", &cfg.to_string()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(Path::new(&target).exists());
}
