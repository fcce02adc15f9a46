use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn eraser(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eraser")).args(args).arg("--out-dir").arg(out).output().expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn correct_signaling_audit() {
    let dir = tempfile::tempdir().unwrap();
    let out = eraser(&["audit-signaling", "--evolution", "correct", "--s-phi", "1.0"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&dir.path().join("signaling.json"));
    assert_eq!(report["verdict"], "no_signaling");
    assert!(num(&report["max_gap"]) <= 1e-12);
    for name in ["pattern_pulse.csv", "pattern_nopulse.csv", "manifest.json"] {
        assert!(dir.path().join(name).metadata().unwrap().len() > 0);
    }
}

#[test]
fn fixture_signaling_audit() {
    let dir = tempfile::tempdir().unwrap();
    let out = eraser(&["audit-signaling", "--evolution", "ingraham", "--s-phi", "1.0"], dir.path());
    assert!(out.status.success());
    let report = json(&dir.path().join("signaling.json"));
    assert_eq!(report["verdict"], "signaling");
    assert!((num(&report["visibility_gap"]) - 1.0).abs() < 1e-9);
    let manifest = json(&dir.path().join("manifest.json"));
    assert!(manifest["warnings"][0].as_str().unwrap().contains("nonphysical fixture"));
}

#[test]
fn fixture_sweep_tracks_overlap() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sweep", "--param", "s-phi", "--from", "0", "--to", "1", "--steps", "11", "--evolution", "ingraham"];
    assert!(eraser(&args, dir.path()).status.success());
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("s_phi,visibility,max_gap"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 11);
    for row in &rows {
        assert!((row[1] - row[0]).abs() < 1e-9, "{row:?}");
    }
    assert_eq!(rows[10][0], 1.0);
}

#[test]
fn pattern_files_and_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = eraser(&["pattern"], dir.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("eraser pattern\n"));
    assert!(stdout.contains("visibility"));

    let csv = std::fs::read_to_string(dir.path().join("pattern.csv")).unwrap();
    assert!(!csv.contains('\r'));
    assert!(csv.ends_with('\n'));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,probability"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (x, p) = l.split_once(',').unwrap();
            (x.parse().unwrap(), p.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 201);
    assert_eq!(rows[100].0, 0.0);
    assert!((rows.iter().map(|r| r.1).sum::<f64>() - 1.0).abs() < 1e-12);

    let vis = json(&dir.path().join("visibility.json"));
    assert!(num(&vis["visibility"]) < 1e-12);
    assert!(vis["fixture_tag"].is_null());

    let manifest = json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["config"]["grid_points"], 201);
    assert_eq!(manifest["config"]["regime"], "instantaneous");
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
}

#[test]
fn manifest_config_reproduces_outputs() {
    let first = tempfile::tempdir().unwrap();
    let args = [
        "audit-signaling",
        "--s-phi",
        "0.3",
        "--s-gamma",
        "0.1",
        "--regime",
        "rate",
        "--gamma-t",
        "2.5",
        "--grid-points",
        "301",
    ];
    assert!(eraser(&args, first.path()).status.success());
    let second = tempfile::tempdir().unwrap();
    let manifest = first.path().join("manifest.json");
    let out = eraser(&["audit-signaling", "--config", manifest.to_str().unwrap()], second.path());
    assert!(out.status.success());
    for name in ["signaling.json", "pattern_pulse.csv", "pattern_nopulse.csv"] {
        assert_eq!(
            std::fs::read(first.path().join(name)).unwrap(),
            std::fs::read(second.path().join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn key_value_config_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "evolution = ingraham\ns_phi = 0.5\n").unwrap();
    let out = eraser(&["pattern", "--config", cfg.to_str().unwrap(), "--s-phi", "0.75"], dir.path());
    assert!(out.status.success());
    let vis = json(&dir.path().join("visibility.json"));
    assert!((num(&vis["visibility"]) - 0.75).abs() < 1e-9);
    assert_eq!(vis["fixture_tag"], "nonphysical fixture");
}

#[test]
fn unitarity_audit_both_evolutions() {
    let dir = tempfile::tempdir().unwrap();
    assert!(eraser(&["audit-unitarity"], dir.path()).status.success());
    let report = json(&dir.path().join("isometry.json"));
    assert_eq!(report["verdict"], "isometric");
    assert!(num(&report["max_deviation"]) <= 1e-12);

    assert!(eraser(&["audit-unitarity", "--evolution", "ingraham", "--s-phi", "1"], dir.path()).status.success());
    let report = json(&dir.path().join("isometry.json"));
    assert_eq!(report["verdict"], "violation");
    assert_eq!(report["map_label"], "ingraham");
    assert!((num(&report["max_deviation"]) - 1.0).abs() < 1e-12);
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["pattern", "--no-such-flag"],
        &["pattern", "--grid-points", "200"],
        &["pattern", "--s-phi", "1.5"],
        &["pattern", "--evolution", "ingraham", "--regime", "rate"],
        &["pattern", "--alice-pulse", "maybe"],
        &["sweep", "--param", "s-phi", "--from", "0", "--to", "1", "--steps", "0"],
        &["teleport"],
    ];
    for args in cases {
        let out = eraser(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let usage = eraser(&["pattern", "--no-such-flag"], dir.path());
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage"));

    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "colour=blue\n").unwrap();
    assert_eq!(eraser(&["pattern", "--config", bad.to_str().unwrap()], dir.path()).status.code(), Some(2));
    let missing = dir.path().join("missing.cfg");
    assert_eq!(eraser(&["pattern", "--config", missing.to_str().unwrap()], dir.path()).status.code(), Some(2));
}

#[test]
fn unwritable_output_dir_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = eraser(&["pattern"], &blocker.join("sub"));
    assert_eq!(out.status.code(), Some(2));
}
