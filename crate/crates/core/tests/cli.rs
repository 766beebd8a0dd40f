use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use wres_core::calculus::builtin;
use wres_core::cli::dsl::print_symbol;
use wres_core::symbol::ChartContext;

fn wres(args: &[&str], dir: &Path, color: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_wres"));
    c.args(args).current_dir(dir).env_remove("WRES_COLOR");
    if let Some(v) = color {
        c.env("WRES_COLOR", v);
    }
    c.output().expect("binary runs")
}

fn task(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn structured_n4_report_has_each_label_once() {
    let dir = tempfile::tempdir().unwrap();
    let t = task(dir.path(), "n4.toml", "dimension = 4\ncomputation = \"boundary\"\noperators = \"builtin:bismut-einstein\"\n[output]\nformat = \"json\"\n");
    let out = wres(&["run", &t], dir.path(), None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    let labels: Vec<&str> = doc["entries"].as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap()).collect();
    for l in ["PHI1", "PHI2", "PHI3", "PHI4", "PHI4A", "PHI4B", "PHI5", "PHI5_B1", "PHI5_B2", "PHI5_B3", "TOTAL_N4", "THM37"] {
        assert_eq!(labels.iter().filter(|x| **x == l).count(), 1, "{l}");
    }
    assert!(!labels.contains(&"THM38"));
    assert_eq!(doc["entries"][0]["match"], true);
    let again = wres(&["run", &t], dir.path(), None);
    assert_eq!(out.stdout, again.stdout, "byte-identical reruns");
}

#[test]
fn text_n3_report_has_thm38_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = wres(&["run", "--dim", "3", "--format", "text"], dir.path(), Some("0"));
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    let row = s.lines().position(|l| l.starts_with("THM38")).expect("THM38 row");
    let lines: Vec<&str> = s.lines().collect();
    assert!(lines[row + 1].trim_start().starts_with("engine:"));
    assert!(lines[row + 2].trim_start().starts_with("paper:"));
    assert!(lines[row + 2].contains("g(V^T,W^T)"));
    assert!(!s.contains('\x1b'));
}

#[test]
fn color_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let out = wres(&["run", "--dim", "3"], dir.path(), Some("1"));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\x1b[31m"));
    let plain = wres(&["run", "--dim", "3"], dir.path(), None);
    assert!(!String::from_utf8(plain.stdout).unwrap().contains('\x1b'));
}

#[test]
fn output_path_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let t = task(dir.path(), "both.toml", "dimension = 4\ncomputation = \"both\"\n[output]\npath = \"report.txt\"\n");
    let out = wres(&["run", &t, "--oracle", "off"], dir.path(), Some("1"));
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let s = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(s.contains("oracle:      off"));
    assert!(s.contains("INTERIOR_N4  yes"));
    assert!(!s.contains('\x1b'), "files never carry color");
}

#[test]
fn user_pair_matches_builtin_pair() {
    let dir = tempfile::tempdir().unwrap();
    let chart = ChartContext::new(4).unwrap();
    let text = print_symbol(&builtin("nabla_pair", &chart).unwrap().symbol).unwrap();
    fs::write(dir.path().join("pair.wsym"), text).unwrap();
    let user = task(dir.path(), "user.toml", "dimension = 4\noperators = \"pair.wsym\"\n[output]\nformat = \"json\"\n");
    let out = wres(&["run", &user], dir.path(), None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let reference: Value = serde_json::from_slice(&wres(&["run", "--dim", "4", "--format", "json"], dir.path(), None).stdout).unwrap();
    assert_eq!(doc["boundary"], reference["boundary"]);
    assert_eq!(doc["entries"], Value::Array(vec![]), "no reference values for user operators");
}

#[test]
fn exit_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| wres(args, dir.path(), None).status.code().unwrap();
    let small = task(dir.path(), "small.toml", "dimension = 2\n");
    assert_eq!(code(&["run", &small]), 3);
    let out = wres(&["run", &small], dir.path(), None);
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension ≥ 3 required"));
    let odd = task(dir.path(), "odd.toml", "dimension = 3\ncomputation = \"interior\"\n");
    assert_eq!(code(&["run", &odd]), 3);
    let unknown = task(dir.path(), "unknown.toml", "dimension = 4\noperators = \"builtin:laplace\"\n");
    assert_eq!(code(&["run", &unknown]), 3);
    let broken = task(dir.path(), "broken.toml", "dimension = [\n");
    assert_eq!(code(&["run", &broken]), 2);
    fs::write(dir.path().join("bad.wsym"), "order 1 { xi(j)*xi(j) }\n").unwrap();
    let bad = task(dir.path(), "bad.toml", "dimension = 4\noperators = \"bad.wsym\"\n");
    assert_eq!(code(&["run", &bad]), 3);
    fs::write(dir.path().join("typo.wsym"), "order 2 {\n  -V(j)*W(l)*xi(j)*zeta(l) }\n").unwrap();
    let typo = task(dir.path(), "typo.toml", "dimension = 4\noperators = \"typo.wsym\"\n");
    let out = wres(&["run", &typo], dir.path(), None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:"), "diagnostic carries a position");
    assert_eq!(code(&["run", "--dim", "4", "--depth", "1"]), 4);
    assert_eq!(code(&["run", "missing.toml"]), 5);
}

#[test]
fn symbol_subcommand_prints_canonical_form() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("inv.wsym"), "# leading symbol of the inverse\norder -2 { normxi2inv }\n").unwrap();
    let out = wres(&["symbol", "inv.wsym", "--dim", "4"], dir.path(), None);
    assert!(out.status.success());
    let first = String::from_utf8(out.stdout).unwrap();
    assert_eq!(first, "order -2 {\n  normxi2inv\n}\n");
    fs::write(dir.path().join("again.wsym"), &first).unwrap();
    assert_eq!(String::from_utf8(wres(&["symbol", "again.wsym"], dir.path(), None).stdout).unwrap(), first);
}
