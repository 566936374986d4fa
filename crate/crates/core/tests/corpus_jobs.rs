use std::path::PathBuf;
use std::process::Command;

use golod_forge::cli::{parse_job, run_job, RunOptions};
use golod_forge::corpus::JOBS;

fn manifest() -> Vec<(String, String)> {
    include_str!("../corpus/manifest.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (f, s) = l.split_once('|').expect("manifest line needs a '|'");
            (f.trim().to_string(), s.trim().to_string())
        })
        .collect()
}

fn source(name: &str) -> &'static str {
    JOBS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).unwrap_or_else(|| panic!("{name} not embedded"))
}

#[test]
fn manifest_covers_every_embedded_job() {
    let m = manifest();
    assert_eq!(m.len(), JOBS.len());
    for (name, _) in JOBS {
        assert!(m.iter().any(|(f, _)| f == name), "{name} missing from manifest");
    }
}

#[test]
fn every_job_meets_its_golden_line() {
    let opts = RunOptions::default();
    for (file, expected) in manifest() {
        let spec = parse_job(source(&file)).unwrap();
        let out = run_job(&spec, &opts).unwrap_or_else(|e| panic!("{file}: {e}"));
        assert!(out.text.contains(&expected), "{file}: wanted {expected:?} in\n{}", out.text);
    }
}

#[test]
fn structured_output_is_deterministic() {
    let opts = RunOptions { strand_bound: None, seed: 7 };
    for file in ["m_squared.job", "split_xy.job", "trim_m.job", "squares_times_m.job"] {
        let spec = parse_job(source(file)).unwrap();
        let a = serde_json::to_string(&run_job(&spec, &opts).unwrap().structured).unwrap();
        let b = serde_json::to_string(&run_job(&spec, &opts).unwrap().structured).unwrap();
        assert_eq!(a, b, "{file}");
        assert!(a.contains("\"schema_version\":1"), "{file}");
    }
}

#[test]
fn jobs_round_trip_through_display() {
    for (name, text) in JOBS {
        let spec = parse_job(text).unwrap();
        let again = parse_job(&spec.to_string()).unwrap_or_else(|e| panic!("{name}: {e}\n{spec}"));
        assert_eq!(spec.to_string(), again.to_string(), "{name}");
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_golod-forge"))
}

fn write_tmp(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("golod_forge_{}_{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn binary_exit_codes() {
    let bad = write_tmp("bad.job", "ring 3 x y z mod 32003;\nideal I = x^2 + y;\nrun resolve I;\n");
    let okf = write_tmp("okf.job", source("koszul_exactness.job"));
    let r = bin().arg(&okf).output().unwrap();
    assert_eq!(r.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&r.stdout).contains("ranks: [1, 3, 3, 1]"));
    let r = bin().arg(&bad).output().unwrap();
    assert_eq!(r.status.code(), Some(2));
    let r = bin().arg(&okf).args(["--format", "structured"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
}
