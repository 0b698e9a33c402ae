use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn superpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superpath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn simulate_fig4_writes_deterministic_csv() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"experiment": "fig4", "s": [0.0, 0.5], "n_max": 3}"#);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let witness = dir.path().join("w.json");
    for out in [&a, &b] {
        let res = superpath(&[
            "simulate",
            "fig4",
            "--config",
            &cfg,
            "--out",
            out.to_str().unwrap(),
            "--witness",
            witness.to_str().unwrap(),
        ]);
        assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "experiment,p,q,s,n,bound_superposed,capacity_classical,gap");
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines[1].starts_with("fig4,0.5,,0,1,"));

    let rows: serde_json::Value = serde_json::from_str(&fs::read_to_string(&witness).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 6);
    assert!(rows[0]["witness"]["priors"].is_array());
}

#[test]
fn simulate_asymptotic_report() {
    let out = superpath(&["simulate", "asymptotic"]);
    let report = stdout_json(&out);
    let bound = report[0]["bound"]["value"].as_f64().unwrap();
    assert!((bound - 0.321928).abs() < 1e-4);
}

#[test]
fn theorem1_check_command() {
    let dir = TempDir::new().unwrap();
    let z = write(dir.path(), "z.json", r#"{"kind": "z", "p": 0.5}"#);
    let report = stdout_json(&superpath(&["theorem1-check", "--channel", &z]));
    assert_eq!(report["condition2"], true);
    assert_eq!(report["condition3"]["holds"], true);
    assert!(report["suggested_repeater"].is_object());

    let bac = write(dir.path(), "bac.json", r#"{"kind": "bac", "p": 0.5, "q": 0.2}"#);
    let report = stdout_json(&superpath(&["theorem1-check", "--channel", &bac]));
    assert_eq!(report["condition2"], false);
    assert!((report["sigma_max"].as_f64().unwrap() - 0.8).abs() < 1e-10);
}

#[test]
fn capacity_command() {
    let dir = TempDir::new().unwrap();
    let z = write(dir.path(), "z.json", r#"{"kind": "z", "p": 0.5}"#);
    let point = stdout_json(&superpath(&["capacity", "--channel", &z, "--n", "2", "--s", "0.5"]));
    assert_eq!(point["n"], 2);
    let single = point["bound_single_sequence"]["value"].as_f64().unwrap();
    let superposed = point["bound_superposed"]["value"].as_f64().unwrap();
    assert!((single - superposed).abs() < 1e-4);
}

#[test]
fn invalid_config_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n_max": 0}"#);
    assert_eq!(superpath(&["simulate", "fig4", "--config", &bad]).status.code(), Some(2));
    let unknown = write(dir.path(), "unknown.json", r#"{"wrong": true}"#);
    assert_eq!(superpath(&["simulate", "fig4", "--config", &unknown]).status.code(), Some(2));
    assert_eq!(superpath(&["simulate", "fig9"]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(
        superpath(&["theorem1-check", "--channel", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let bad_p = write(dir.path(), "p.json", r#"{"kind": "z", "p": 1.5}"#);
    assert_eq!(superpath(&["capacity", "--channel", &bad_p]).status.code(), Some(2));
}

#[test]
fn missing_limit_is_reported_not_fatal() {
    let dir = TempDir::new().unwrap();
    // pure dephasing has no unique fixed point, so the asymptotic report
    // carries an error entry rather than failing
    let cfg = write(dir.path(), "cfg.json", r#"{"channel": {"kind": "z", "p": 0.0}}"#);
    let report = stdout_json(&superpath(&["simulate", "asymptotic", "--config", &cfg]));
    assert!(report[0]["error"].is_string());
}

#[test]
fn unwritable_output_exits_1() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("no/such/dir/out.csv");
    let cfg = write(dir.path(), "cfg.json", r#"{"s": [0.5], "n_max": 1}"#);
    let res = superpath(&["simulate", "fig4", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
}
