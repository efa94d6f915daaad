//! Acceptance suite: criteria 1 to 8 over Z/4 with module orders at most 8.
//!
//! Runs without the libtest harness so that every criterion prints exactly
//! one PASS/FAIL line. Set `EXT2CAT_ACCEPTANCE=quick` to restrict the sweeps
//! to the named complexes.

use std::process::ExitCode;
use std::time::Instant;

use ext2cat_core::cx2::Complex2;
use ext2cat_core::error::Result;
use ext2cat_core::spl::enumerate_splittings;
use ext2cat_core::sweep::{
    criteria3_4, criterion1, criterion2, criterion5, criterion6, criterion7, criterion8, named, population, Config,
    CriterionReport,
};
use ext2cat_core::twocat::{derived_hom_with, ResolutionKind};
use ext2cat_core::zmod::Budget;

const MODULUS: i64 = 4;
const MAX_ORDER: u128 = 8;
const SEED: u64 = 0;
/// Every count is exact; agreement means equality.
const TOLERANCE: u128 = 0;
/// Orbits of Aut(M1) x Aut(M0) on Hom(M1, M0), counted by an independent
/// brute-force enumeration.
const POPULATION: usize = 88;
/// Pairs (f0, f1) summed over all ordered pairs of the population, from the
/// same independent enumeration.
const FIBERS: usize = 1_079_994;
const END_SPLIT: u128 = 8;
const END_TWISTED: u128 = 4;
const PI0_SPLIT: usize = 2;

/// Failures known in advance: criterion, failing case, reason. They are
/// still reported as FAIL. The run errors on any other failure, and on a
/// known failure that no longer occurs.
const EXPECTED_FAILURES: &[(u8, &str, &str)] = &[(
    8,
    "flipped sign in post-composition",
    "negating the pushforward gives an isomorphic composite, invisible to criteria 1-4",
)];

struct Outcome {
    id: u8,
    name: String,
    passed: bool,
    failing: Vec<String>,
    detail: String,
    seconds: f64,
}

fn outcome(rep: &CriterionReport, extra: Vec<String>) -> Outcome {
    let mut detail: Vec<String> = vec![format!("{} checks", rep.checked)];
    detail.extend(rep.notes.iter().cloned());
    if let Some(f) = rep.failures.first() {
        detail.push(format!("{} failures, first at {}: {}", rep.failures.len(), f.case, f.detail));
    }
    let mut failing: Vec<String> = rep.failures.iter().map(|f| f.case.clone()).collect();
    failing.extend(extra.iter().map(|_| "spot check".to_string()));
    detail.extend(extra);
    Outcome { id: rep.id, name: rep.name.clone(), passed: failing.is_empty(), failing, detail: detail.join("; "), seconds: rep.seconds }
}

fn expect(cond: bool, what: String, bad: &mut Vec<String>) {
    if !cond {
        bad.push(what);
    }
}

fn by_name(name: &str) -> Complex2 {
    named(MODULUS).unwrap().into_iter().find(|(n, _)| n == name).unwrap().1
}

fn spot_splittings(budget: Budget) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let t = enumerate_splittings(&by_name("twisted"), budget)?;
    expect(t.is_empty(), format!("Spl(twisted) has {} components", t.pi0()), &mut bad);
    let s = enumerate_splittings(&by_name("split"), budget)?;
    expect(s.pi0() == PI0_SPLIT, format!("Spl(split) has {} components", s.pi0()), &mut bad);
    Ok(bad)
}

fn spot_end() -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for (name, want) in [("split", END_SPLIT), ("twisted", END_TWISTED)] {
        let m = by_name(name);
        for kind in [ResolutionKind::Periodic, ResolutionKind::KernelCover] {
            let got = derived_hom_with(&m, &m, kind)?.order();
            expect(got.abs_diff(want) <= TOLERANCE, format!("|End({name})| = {got} via {kind:?}, want {want}"), &mut bad);
        }
    }
    Ok(bad)
}

fn or_error(r: Result<Vec<String>>) -> Vec<String> {
    r.unwrap_or_else(|e| vec![format!("error: {e}")])
}

fn main() -> ExitCode {
    let quick = std::env::var("EXT2CAT_ACCEPTANCE").is_ok_and(|v| v == "quick");
    let cfg = Config { modulus: MODULUS, max_order: MAX_ORDER, full: !quick, seed: SEED, budget: Budget::default() };
    let start = Instant::now();
    let cs = population(&cfg).expect("population");
    println!(
        "acceptance over Z/{MODULUS}, orders <= {MAX_ORDER}, {} population of {} complexes",
        if quick { "named" } else { "full" },
        cs.len()
    );
    let mut size_check = Vec::new();
    if !quick {
        expect(cs.len() == POPULATION, format!("population has {} complexes, want {POPULATION}", cs.len()), &mut size_check);
    }

    let mut outcomes = Vec::new();
    let mut extra = size_check.clone();
    extra.extend(or_error(spot_splittings(cfg.budget)));
    outcomes.push(outcome(&criterion1(&cs, cfg.budget), extra));
    outcomes.push(outcome(&criterion2(&cs, cfg.budget), size_check));
    let (r3, r4) = criteria3_4(&cs, cfg.budget);
    let mut extra3 = Vec::new();
    if !quick {
        let note = format!("{FIBERS} fibers");
        expect(r3.notes.contains(&note), format!("fiber count differs from {FIBERS}: {:?}", r3.notes), &mut extra3);
    }
    outcomes.push(outcome(&r3, extra3));
    outcomes.push(outcome(&r4, or_error(spot_end())));
    outcomes.push(outcome(&criterion5(&cfg), Vec::new()));
    outcomes.push(outcome(&criterion6(&cfg), Vec::new()));
    outcomes.push(outcome(&criterion7(&cs, cfg.budget, cfg.seed), Vec::new()));
    outcomes.push(outcome(&criterion8(&cfg), Vec::new()));

    let mut ok = true;
    for o in &outcomes {
        let known: Vec<_> = EXPECTED_FAILURES.iter().filter(|(id, _, _)| *id == o.id).collect();
        let status = if o.passed { "PASS" } else { "FAIL" };
        let mut tags = Vec::new();
        for (_, case, why) in &known {
            if o.failing.iter().any(|c| c == case) {
                tags.push(format!("expected failure at {case}: {why}"));
            } else {
                tags.push(format!("known failure at {case} no longer occurs"));
                ok = false;
            }
        }
        if o.failing.iter().any(|c| !known.iter().any(|(_, case, _)| c == case)) {
            ok = false;
        }
        let tag = if tags.is_empty() { String::new() } else { format!(" [{}]", tags.join("; ")) };
        println!("criterion {} {status}{tag}: {} ({:.2}s) {}", o.id, o.name, o.seconds, o.detail);
    }
    println!("acceptance {} in {:.1}s", if ok { "ok" } else { "FAILED" }, start.elapsed().as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
