use std::path::Path;
use std::process::{Command, Output};

use rabi_spectra::RunConfig;

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rabi-spectra"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

/// Data rows of a CSV file, comments and header dropped.
fn rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| format!("{l}\n")).collect();
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(body.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn one_photon_crossing_row() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["crossings", "--model", "1p", "--delta", "1.5", "--n", "1", "--m", "2"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&dir.path().join("crossings.csv"));
    assert_eq!(r.len(), 1);
    assert!((num(&r[0][3]) - 0.5995).abs() < 1e-4);
}

#[test]
fn two_photon_crossing_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["crossings", "--model", "2p", "--q", "14", "--delta", "2", "--n", "2", "--m", "3"], dir.path());
    assert!(o.status.success());
    let r = rows(&dir.path().join("crossings.csv"));
    let got: Vec<(f64, f64)> = r.iter().map(|r| (num(&r[3]), num(&r[4]))).collect();
    let want = [(0.3015, 1.5954), (0.4686, 0.6974)];
    assert_eq!(got.len(), 2);
    for (g, w) in got.iter().zip(want) {
        assert!((g.0 - w.0).abs() < 1e-4 && (g.1 - w.1).abs() < 1e-4, "{got:?}");
    }
}

#[test]
fn gcurve_zeros_match_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gcurve", "--model", "2p", "--q", "14", "--delta", "3", "--epsilon", "0.4", "--g", "0.35", "--oracle"];
    let o = run(&args, dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&dir.path().join("gcurve_zeros.csv"));
    assert!(r.len() >= 8);
    for row in &r {
        assert_eq!(row[4], "matched");
        assert!(num(&row[3]) < 1e-6);
    }
    let curve = rows(&dir.path().join("gcurve.csv"));
    assert!(curve.len() > 1000);
}

#[test]
fn empty_window_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["gcurve", "--model", "1p", "--delta", "1", "--g", "0.3", "--e-window", "-0.5:-0.5"], dir.path());
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("gcurve.csv")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>(), vec!["E,G,pole"]);
}

#[test]
fn saved_config_reproduces_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.json");
    let args = [
        "spectrum", "--model", "2p", "--q", "34", "--delta", "2", "--k", "1", "--g-range", "0.1:0.3:0.05",
        "--e-window=-1:3", "--save-config",
    ];
    let mut full: Vec<&str> = args.to_vec();
    full.push(cfg_path.to_str().unwrap());
    let a = dir.path().join("a");
    assert!(run(&full, &a).status.success());
    let saved = RunConfig::load(&cfg_path).unwrap();
    assert_eq!(serde_json::from_str::<RunConfig>(&saved.to_json()).unwrap(), saved);

    // same config, same output directory name, bitwise identical files
    let first = std::fs::read(a.join("spectrum.csv")).unwrap();
    std::fs::remove_dir_all(&a).unwrap();
    let o = run(&["spectrum", "--config", cfg_path.to_str().unwrap()], &a);
    assert!(o.status.success());
    assert_eq!(std::fs::read(a.join("spectrum.csv")).unwrap(), first);
}

#[test]
fn validation_errors_exit_one_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("none");
    let o = run(&["gcurve", "--model", "2p", "--delta", "2", "--g", "0.3"], &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
    let o = run(&["spectrum", "--model", "2p", "--q", "14", "--delta", "2", "--g-range", "0.1:0.6:0.1"], &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
    let o = run(&["crossings", "--model", "1p", "--delta", "2", "--n", "3", "--m", "2"], &out);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["gcurve", "--model", "3p"], &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn verification_mismatch_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--model", "1p", "--delta", "1.5", "--epsilon", "0.3", "--g", "0.5", "--tol", "1e-16"];
    let o = run(&args, dir.path());
    assert_eq!(o.status.code(), Some(3));
    // the report is still written
    assert!(dir.path().join("verify.csv").exists());
}

#[test]
fn verify_passes_on_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--model", "2p", "--q", "14", "--delta", "2", "--n", "1", "--m", "2", "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(doc["result"]["pass"], true);
    assert_eq!(doc["config"]["q"], "1/4");
}

#[test]
fn thread_cap_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rabi-spectra"))
        .args(["crossings", "--model", "1p", "--delta", "1.5", "--n", "1", "--m", "2", "--out"])
        .arg(dir.path())
        .env("RABI_SPECTRA_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_rabi-spectra"))
        .args(["crossings", "--model", "1p", "--delta", "1.5", "--n", "1", "--m", "2", "--out"])
        .arg(dir.path())
        .env("RABI_SPECTRA_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn exceptional_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["exceptional", "--model", "2p", "--q", "14", "--delta", "2", "--epsilon", "1", "--kind", "2B", "--m", "2", "--format", "csv,svg"];
    let o = run(&args, dir.path());
    assert!(o.status.success());
    let r = rows(&dir.path().join("exceptional.csv"));
    assert!(r.iter().any(|row| (num(&row[2]) - 0.3717).abs() < 1e-4));
    let svg = std::fs::read_to_string(dir.path().join("exceptional.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<circle"));
}

#[test]
fn census_defaults_give_715() {
    let dir = tempfile::tempdir().unwrap();
    for (model, extra) in [("1p", None), ("2p", Some("14"))] {
        let mut args = vec!["census", "--model", model, "--delta", "2", "--format", "json"];
        if let Some(q) = extra {
            args.extend(["--q", q]);
        }
        let o = run(&args, dir.path());
        assert!(o.status.success(), "{model}");
        let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("census.json")).unwrap()).unwrap();
        assert_eq!(doc["result"]["total"], 715, "{model}");
        assert_eq!(doc["result"]["anomalies"].as_array().unwrap().len(), 0);
        assert_eq!(doc["result"]["per_pair"].as_array().unwrap().len(), 145);
    }
}
