use std::path::Path;
use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;
use tempfile::TempDir;

fn shared_cache() -> &'static Path {
    static DIR: OnceLock<TempDir> = OnceLock::new();
    DIR.get_or_init(|| TempDir::new().unwrap()).path()
}

fn symwald(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_symwald"));
    cmd.args(args);
    for var in ["SYMWALD_CACHE_DIR", "SYMWALD_WORKERS", "SYMWALD_DMAX", "SYMWALD_MMAX", "SYMWALD_HEAVY_DMAX", "SYMWALD_M_CHECK", "SYMWALD_FORMAT"] {
        cmd.env_remove(var);
    }
    cmd
}

fn run(args: &[&str]) -> Output {
    symwald(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["waldschmidt", "alpha", "D4", "--m", "0"]).status.code(), Some(2));
    assert_eq!(run(&["waldschmidt", "ledger", "B4"]).status.code(), Some(2));
    assert_eq!(run(&["config", "E8"]).status.code(), Some(2));
}

#[test]
fn config_reports_f4_lines() {
    let out = run(&["config", "f4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "symwald/1");
    assert_eq!(v["size"], 24);
    assert_eq!(v["lines"].as_array().unwrap().len(), 32);
    assert_eq!(v["dual_plane_incidence"]["total"], 216);
    assert_eq!(v["plane_section"]["z_collinear"], false);
}

#[test]
fn config_csv_lists_points() {
    let out = run(&["config", "D4", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("point,coordinates"));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn alpha_of_d4_at_multiplicity_2() {
    let out = run(&["waldschmidt", "alpha", "D4", "--m", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["alpha"], 4);
    assert_eq!(v["result"]["multiplicity"], 2);
}

#[test]
fn certify_d4() {
    let out = run(&["waldschmidt", "certify", "D4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "symwald/1");
    assert_eq!((v["value_num"].as_i64(), v["value_den"].as_i64()), (Some(2), Some(1)));
    assert!(v["evidence"].as_array().unwrap().iter().all(|e| e["passed"] == true));
}

#[test]
fn ledger_is_deterministic() {
    let a = run(&["waldschmidt", "ledger", "F4"]);
    let b = run(&["waldschmidt", "ledger", "f4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["terminal"], "(4;1,0,4)");
}

#[test]
fn table2_markdown() {
    let cache = shared_cache().to_str().unwrap();
    let out = run(&["--cache-dir", cache, "gradedring", "table2", "--mmax", "18", "--format", "markdown"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| 10 | <u>36</u> <u>42</u> 50 |"));
    assert!(text.contains("| 16 | <u>60</u> 60 64 72 80 |"));
    assert!(text.contains("| 18 | <u>66</u> 68 72 74 82 90 |"));
    assert!(!text.contains("| 20 |"));
}

#[test]
fn environment_overrides_flags_defaults() {
    let cache = shared_cache().to_str().unwrap();
    let out = symwald(&["gradedring", "table2"])
        .env("SYMWALD_CACHE_DIR", cache)
        .env("SYMWALD_FORMAT", "markdown")
        .env("SYMWALD_MMAX", "6")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| 6 | <u>24</u> <u>30</u> |"));
    assert!(!text.contains("| 8 |"));
}

#[test]
fn corrupt_cache_is_rebuilt_with_a_warning() {
    let dir = TempDir::new().unwrap();
    let cache = dir.path().to_str().unwrap();
    assert!(run(&["--cache-dir", cache, "group"]).status.success());
    let file = dir.path().join("w_h4.group");
    assert!(file.exists());
    std::fs::write(&file, "symwald-group v1\ngarbage\n").unwrap();
    let out = run(&["--cache-dir", cache, "group"]);
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("warning: cache file"), "{stderr}");
    assert_eq!(json(&out)["h4"]["order"], 14400);
    // the rebuilt file loads cleanly
    let again = run(&["--cache-dir", cache, "group"]);
    assert!(!String::from_utf8_lossy(&again.stderr).contains("warning"));
}

#[test]
fn verify_all_on_reduced_ranges() {
    let dir = TempDir::new().unwrap();
    let out = run(&["--cache-dir", dir.path().to_str().unwrap(), "verify-all", "--dmax", "36", "--mmax", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);
}
