use std::path::PathBuf;
use std::process::{Command, Output};

fn emlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emlift"))
        .args(args)
        .env_remove("EMLIFT_BUDGET")
        .output()
        .expect("binary runs")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("emlift-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn passing_run_exits_zero() {
    let o = emlift(&["verify", "--suite", "smc", "--instance", "finset", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("smc-coherence@finset"));
}

#[test]
fn detected_mutation_exits_one_with_witness() {
    let o = emlift(&[
        "verify",
        "--suite",
        "hopf",
        "--instance",
        "matq",
        "--mutate",
        "antipode-identity",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("z3:hopf-left-antipode: e1 ↦ e2 vs e0"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn unknown_suite_is_a_config_error() {
    let o = emlift(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn additive_on_sets_is_refused() {
    let o = emlift(&["verify", "--suite", "additive", "--instance", "finset"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("finset"), "{}", stderr(&o));
}

#[test]
fn mutation_outside_selected_suites_is_refused() {
    let o = emlift(&["verify", "--suite", "smc", "--mutate", "break-n"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn list_is_stable_and_names_every_suite() {
    let a = emlift(&["verify", "--list"]);
    let b = emlift(&["verify", "--list"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    for s in [
        "smc-coherence",
        "hopf-laws",
        "monadic",
        "modality",
        "mixed-law",
        "exp-lifting",
        "mell",
        "additive",
        "differential",
        "lafont",
    ] {
        assert!(text.contains(s), "--list lacks {s}");
    }
    assert!(text.contains("Hopf monoid: antipode law"));
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = scratch_dir("det");
    let run = |name: &str| {
        let path = dir.join(name);
        let o = emlift(&[
            "verify",
            "--suite",
            "hopf,differential",
            "--seed",
            "5",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read(path).unwrap()
    };
    let a = run("a.json");
    let b = run("b.json");
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config_echo"]["seed"], 5);
}

#[test]
fn malformed_group_table_is_a_config_error() {
    let dir = scratch_dir("group");
    let path = dir.join("bad.txt");
    std::fs::write(&path, "group bad 2\ne e e\ne a a\na e a\n").unwrap();
    let o = emlift(&["verify", "--suite", "hopf", "--group", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn extra_group_table_is_checked() {
    let dir = scratch_dir("extra");
    let path = dir.join("z2.txt");
    std::fs::write(&path, "group c2 2\ne e e\ne x x\nx e x\nx x e\n").unwrap();
    let o = emlift(&[
        "verify",
        "--suite",
        "hopf",
        "--instance",
        "finset",
        "--group",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = scratch_dir("cfg");
    let cfg = dir.join("cfg.json");
    let report = dir.join("r.json");
    std::fs::write(&cfg, r#"{"suite": ["lafont"], "seed": 3, "samples": 7}"#).unwrap();
    let o = emlift(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "9",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(report).unwrap()).unwrap();
    assert_eq!(v["config_echo"]["seed"], 9);
    assert_eq!(v["config_echo"]["samples"], 7);
    assert_eq!(v["suites"][0]["name"], "lafont@finset");
}

#[test]
fn unknown_config_key_is_a_config_error() {
    let dir = scratch_dir("badcfg");
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"suites": ["lafont"]}"#).unwrap();
    let o = emlift(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tiny_budget_reports_resource_exhaustion() {
    let o = Command::new(env!("CARGO_BIN_EXE_emlift"))
        .args(["verify", "--suite", "modality", "--instance", "finrel"])
        .env("EMLIFT_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn budget_env_must_be_a_number() {
    let o = Command::new(env!("CARGO_BIN_EXE_emlift"))
        .args(["verify", "--suite", "lafont"])
        .env("EMLIFT_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
