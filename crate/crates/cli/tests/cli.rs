use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const SCENARIO: &str = r#"{
  "modulus": 4,
  "complexes": {
    "twisted": {"M1": [4], "M0": [4], "d": [[2]]},
    "split": {"M1": [2], "M0": [2], "d": [[0]]},
    "acyclic": {"M1": [2], "M0": [2], "d": [[1]]},
    "free0": {"M1": [], "M0": [4]}
  },
  "maps": {
    "id": {"from": "twisted", "to": "twisted", "f0": [[1]], "f1": [[1]]},
    "e": {"from": "split", "to": "split", "f0": [[1]], "f1": [[0]], "component": 1}
  },
  "tasks": [
    {"op": "homology", "complex": "twisted", "expect": {"H0": [2], "H1": [2]}},
    {"op": "homology", "complex": "free0", "expect": {"H0": [4], "H1": []}},
    {"op": "extclass", "complex": "twisted", "expect": {"zero": false, "ext2": [2]}},
    {"op": "extclass", "complex": "split", "expect": {"zero": true}},
    {"op": "splittings", "complex": "twisted", "expect": {"pi0": 0}},
    {"op": "splittings", "complex": "split", "expect": {"pi0": 2, "aut_orders": [2, 2], "ext1": [2]}},
    {"op": "homcat", "from": "split", "to": "split", "expect": {"pi0": 8, "oracle_order": 8}},
    {"op": "homcat", "from": "acyclic", "to": "twisted", "expect": {"pi0": 1}},
    {"op": "compose", "first": "id", "second": "id", "expect": {"isomorphic": true, "/zigzag/f0": [[1]]}},
    {"op": "compose", "first": "e", "second": "e", "expect": {"isomorphic": true, "/adjunction/passed": true}},
    {"op": "truncate", "objects": ["split", "twisted"], "expect": {"hom_sizes": [[8, 4], [4, 4]], "/axioms/failures": [], "/end_rings/1/dual_numbers": true}}
  ]
}"#;

fn ext2cat(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ext2cat"));
    cmd.args(args).env_remove("EXT2CAT_ENUM_LIMIT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn scenario_tasks_pass() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "s.json", SCENARIO);
    let out = ext2cat(&["run", &sc], &[]);
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    for t in rep["tasks"].as_array().unwrap() {
        assert_eq!(t["ok"], true, "{t:#}");
    }
    assert_eq!(rep["passed"], true);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "s.json", SCENARIO);
    let file = dir.path().join("r.json");
    let a = ext2cat(&["run", &sc, "--out", file.to_str().unwrap()], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert!(a.stdout.is_empty());
    let b = ext2cat(&["run", &sc], &[]);
    let written = std::fs::read(&file).unwrap();
    assert_eq!(written, b.stdout);
    assert!(written.ends_with(b"\n"));
}

#[test]
fn text_report() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "s.json", SCENARIO);
    let out = ext2cat(&["run", &sc, "--text"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ok   task 0 homology"));
    assert!(text.trim_end().ends_with("all tasks passed"));
}

#[test]
fn failed_expectation_and_bad_task_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(
        dir.path(),
        "f.json",
        r#"{"modulus": 4,
            "complexes": {"T": {"M1": [4], "M0": [4], "d": [[2]]}},
            "tasks": [
              {"op": "homology", "complex": "T", "expect": {"H0": [4]}},
              {"op": "splittings", "complex": "missing"},
              {"op": "frobnicate"},
              {"op": "homology", "complex": "T"}
            ]}"#,
    );
    let out = ext2cat(&["run", &sc], &[]);
    assert_eq!(out.status.code(), Some(1));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    let oks: Vec<bool> = rep["tasks"].as_array().unwrap().iter().map(|t| t["ok"].as_bool().unwrap()).collect();
    assert_eq!(oks, vec![false, false, false, true]);
    assert_eq!(rep["tasks"][0]["assertions"][0]["actual"], serde_json::json!([2]));
    assert!(rep["tasks"][1]["error"].as_str().unwrap().contains("unknown complex"));
}

#[test]
fn parse_errors_give_location() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "bad.json", "{\"modulus\": 4,\n \"tasks\": [ }");
    let out = ext2cat(&["run", &sc], &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn ill_defined_matrices_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    // 1: Z/2 -> Z/4 is not well defined
    let sc = write(
        dir.path(),
        "m.json",
        r#"{"modulus": 4, "complexes": {"X": {"M1": [2], "M0": [4], "d": [[1]]}},
            "tasks": [{"op": "homology", "complex": "X"}]}"#,
    );
    let out = ext2cat(&["run", &sc], &[]);
    assert_eq!(out.status.code(), Some(1));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rep["tasks"][0]["error"].as_str().unwrap().contains("complex X"));
}

#[test]
fn enumeration_budget_from_environment_and_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#""complexes": {"S": {"M1": [2, 2], "M0": [2, 2], "d": [[0, 0], [0, 0]]}},
                  "tasks": [{"op": "homcat", "from": "S", "to": "S"}]"#;
    let sc = write(dir.path(), "b.json", &format!("{{\"modulus\": 4, {body}}}"));
    let out = ext2cat(&["run", &sc], &[("EXT2CAT_ENUM_LIMIT", "10")]);
    assert_eq!(out.status.code(), Some(1));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rep["tasks"][0]["error"].as_str().unwrap().contains("budget is 10"));
    let sc = write(dir.path(), "c.json", &format!("{{\"modulus\": 4, \"budgets\": {{\"enum_limit\": 12}}, {body}}}"));
    let rep: Value = serde_json::from_slice(&ext2cat(&["run", &sc], &[]).stdout).unwrap();
    assert!(rep["tasks"][0]["error"].as_str().unwrap().contains("budget is 12"));
}

#[test]
fn selfcheck_reports_every_criterion() {
    let out = ext2cat(&["selfcheck"], &[]);
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    let criteria = rep["criteria"].as_array().unwrap();
    let ids: Vec<u64> = criteria.iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, (1..=8).collect::<Vec<_>>());
    let all = criteria.iter().all(|c| c["failures"].as_array().unwrap().is_empty());
    assert_eq!(out.status.code(), Some(if all { 0 } else { 1 }));
    let text = String::from_utf8(ext2cat(&["selfcheck", "--text"], &[]).stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion ")).count(), 8);
}
