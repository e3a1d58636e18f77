//! End-to-end runs of the `qradar` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qradar::cli::CsvTable;

fn qradar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qradar")).args(args).output().unwrap()
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn planck_to_stdout() {
    let cfg = config("planck.json");
    let out = qradar(&["planck", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = CsvTable::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(!table.column("noise_occupation").unwrap().is_empty());
}

#[test]
fn csv_and_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, svg) = (dir.path().join("o.csv"), dir.path().join("o.svg"));
    let cfg = config("occupancy.json");
    let out = qradar(&[
        "occupancy",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let table = CsvTable::parse(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    for p in table.column("p00").unwrap() {
        assert!((0.0..=1.0).contains(&p));
    }
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn invalid_parameter_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bad.json",
        r#"{"scenario": {"bandwidth_ghz": -5, "noise_occupation": 32, "transmissivity": 1e-3}}"#,
    );
    let out = qradar(&["bounds-sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bandwidth"));
}

#[test]
fn unknown_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "typo.json", r#"{"scenario": {"carrier_gz": 100}}"#);
    let out = qradar(&["planck", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("carrier_gz"));
}

#[test]
fn missing_config_and_bad_usage_exit_2() {
    assert_eq!(qradar(&["planck", "--config", "/nonexistent/q.json"]).status.code(), Some(2));
    assert_eq!(qradar(&["no-such-subcommand", "--config", "x.json"]).status.code(), Some(2));
    let cfg = config("planck.json");
    assert_eq!(qradar(&["planck", "--config", cfg.to_str().unwrap(), "--workers", "0"]).status.code(), Some(2));
}

#[test]
fn help_exits_0() {
    let out = qradar(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("--config"));
}
