//! Running a scenario and rendering the report.

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Result;
use ext2cat_core::sweep::SelfcheckReport;
use serde::Serialize;
use serde_json::Value;

use crate::scenario::{Resolved, Scenario};
use crate::tasks::{run_task, Task};

/// An `expect` entry: a result field (top-level key, or JSON pointer when it
/// starts with `/`) and the value it must have.
#[derive(Debug, Serialize)]
pub struct Assertion {
    pub key: String,
    pub expected: Value,
    pub actual: Value,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct TaskReport {
    pub op: String,
    pub inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assertions: Vec<Assertion>,
    pub ok: bool,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub modulus: i64,
    pub tasks: Vec<TaskReport>,
    pub passed: bool,
}

fn lookup<'a>(result: &'a Value, key: &str) -> Option<&'a Value> {
    if key.starts_with('/') {
        result.pointer(key)
    } else {
        result.get(key)
    }
}

fn run_one(raw: &Value, resolved: &Result<Resolved>) -> TaskReport {
    let start = Instant::now();
    let mut inputs = raw.clone();
    let expect = inputs.as_object_mut().and_then(|o| o.remove("expect"));
    let op = inputs.get("op").and_then(Value::as_str).unwrap_or("?").to_string();
    let outcome = (|| -> Result<Value> {
        let task: Task = serde_json::from_value(inputs.clone())?;
        let r = resolved.as_ref().map_err(|e| anyhow::anyhow!("{e:#}"))?;
        run_task(&task, r)
    })();
    let mut rep = TaskReport { op, inputs: raw.clone(), result: None, error: None, assertions: Vec::new(), ok: false, seconds: 0.0 };
    match outcome {
        Ok(result) => {
            if let Some(Value::Object(exp)) = expect {
                for (key, expected) in exp {
                    let actual = lookup(&result, &key).cloned().unwrap_or(Value::Null);
                    let holds = actual == expected;
                    rep.assertions.push(Assertion { key, expected, actual, holds });
                }
            }
            // a result may carry its own verdict, as a selfcheck does
            let inner = result.get("passed") != Some(&Value::Bool(false));
            rep.ok = inner && rep.assertions.iter().all(|a| a.holds);
            rep.result = Some(result);
        }
        Err(e) => rep.error = Some(format!("{e:#}")),
    }
    rep.seconds = start.elapsed().as_secs_f64();
    rep
}

/// Run every task in order. A task that fails to parse or errors is reported
/// and the remaining tasks still run.
pub fn run(sc: &Scenario) -> Report {
    let resolved = sc.resolve();
    let tasks: Vec<TaskReport> = sc.tasks.iter().map(|t| run_one(t, &resolved)).collect();
    let passed = tasks.iter().all(|t| t.ok);
    Report { modulus: sc.modulus, tasks, passed }
}

fn short(v: &Value) -> Option<String> {
    let s = v.to_string();
    (s.len() <= 60).then_some(s)
}

pub fn render_text(rep: &Report) -> String {
    let mut out = String::new();
    for (i, t) in rep.tasks.iter().enumerate() {
        let status = if t.ok { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{status} task {i} {} ({:.2}s)", t.op, t.seconds);
        if let Some(e) = &t.error {
            let _ = writeln!(out, "     error: {e}");
        }
        if let Some(Value::Object(r)) = &t.result {
            for (k, v) in r {
                if let Some(s) = short(v) {
                    let _ = writeln!(out, "     {k} = {s}");
                }
            }
        }
        for a in &t.assertions {
            let mark = if a.holds { "holds" } else { "FAILS" };
            let _ = writeln!(out, "     expect {} = {}: {mark} (got {})", a.key, a.expected, a.actual);
        }
    }
    let _ = writeln!(out, "{}", if rep.passed { "all tasks passed" } else { "some tasks failed" });
    out
}

pub fn render_selfcheck(rep: &SelfcheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "selfcheck {} over Z/{}, orders <= {}, {} complexes", rep.level, rep.modulus, rep.max_order, rep.population);
    for c in &rep.criteria {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "criterion {} {status}: {} ({} checks, {:.2}s)", c.id, c.name, c.checked, c.seconds);
        for n in &c.notes {
            let _ = writeln!(out, "    {n}");
        }
        if let Some(f) = c.failures.first() {
            let _ = writeln!(out, "    counterexample {}: {}", f.case, f.detail);
        }
    }
    out
}
