use std::path::PathBuf;
use std::process::{Command, Output};

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn ggrow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggrow")).args(args).output().expect("run ggrow")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn run_spec(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = spec(name);
    let mut args = vec![cmd, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    ggrow(&args)
}

#[test]
fn series_prints_rational_functions() {
    let o = run_spec("series", "racg.json", &["--language", "conjgeo"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("series: (1+3z+4z^2-9z^4+z^5+4z^6)/(1-z^2)^2"));
    let o = run_spec("series", "f2.json", &["--language", "conjgeo"]);
    assert!(stdout(&o).contains("series: (1+z-z^2-9z^3)/(1-3z-z^2+3z^3)"));
}

#[test]
fn trivial_group_series_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("trivial.json");
    std::fs::write(&p, r#"{"vertices":[],"edges":[]}"#).unwrap();
    let o = ggrow(&["series", "--input", p.to_str().unwrap(), "--language", "geo", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("series: 1\n"));
}

#[test]
fn series_formats() {
    let o = run_spec("series", "psl2.json", &["--language", "conjgeo", "--order", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "index,coefficient\n0,1\n1,3\n2,4\n3,0\n4,8\n");
    let o = run_spec("series", "psl2.json", &["--language", "sphconj", "--order", "12", "--format", "json", "--reconstruct"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["method"], "burnside");
    assert_eq!(v["coefficients"][6], 4);
    assert!(v["reconstructed"].is_null());
    let o = run_spec("series", "psl2.json", &["--format", "dot"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn automaton_dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("racg.dot");
    let o = run_spec("automaton", "racg.json", &["--language", "geo", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "states: 6\n");
    let golden = include_str!("../../core/tests/data/racg_geo.dot");
    assert_eq!(std::fs::read_to_string(&out).unwrap(), golden);
    let o = run_spec("automaton", "z2_free_z2.json", &["--language", "sphconj"]);
    assert_eq!(stdout(&o), include_str!("../../core/tests/data/z2_free_z2_sphconj.dot"));
    let o = run_spec("automaton", "z.json", &["--language", "conjgeo"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("states: 3"));
}

#[test]
fn non_regular_request_is_refused() {
    let o = run_spec("automaton", "f2.json", &["--language", "sphconj"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not regular"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = run_spec("verify", "racg.json", &["--language", "conjgeo", "--max-len", "7", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    assert_eq!(v["unconfirmedClasses"], 0);
    let o = run_spec("verify", "racg.json", &["--max-len", "5", "--debug-drop-rule", "16"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run_spec("verify", "bad.json", &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn kb_report() {
    let o = run_spec("kb", "racg.json", &["--rules"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with(include_str!("../../core/tests/data/racg_rules.golden")));
    assert!(text.contains("rules: 21\n") && text.contains("unresolved: 0\n"));
    let o = run_spec("kb", "racg.json", &["--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["confluent"], true);
    assert_eq!(run_spec("kb", "z4_amalg_z4.json", &[]).status.code(), Some(2));
}

#[test]
fn examples_pass() {
    let o = ggrow(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS racg")).count(), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(ggrow(&["series"]).status.code(), Some(2));
    assert_eq!(run_spec("series", "racg.json", &["--language", "nope"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_ggrow"))
        .env("GGROW_CAPS", "bogus=1")
        .args(["series", "--input", spec("racg.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
