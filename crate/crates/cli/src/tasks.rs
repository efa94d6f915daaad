//! Scenario tasks. Each one calls into the core library and returns its
//! result as JSON.

use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use ext2cat_core::adm::segal_witness;
use ext2cat_core::cx2::Complex2;
use ext2cat_core::ext::{free_resolution, yoneda_class_with, ExtGroup};
use ext2cat_core::spl::enumerate_splittings;
use ext2cat_core::sweep::{selfcheck, Config};
use ext2cat_core::twocat::{
    compose, compose_kan, derived_hom_oracle, hom_category, hom_fiber, kan_functor_to, truncate, OneMorphism,
};
use ext2cat_core::error::Result as CoreResult;
use ext2cat_core::zmod::{hom_count, Budget};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::scenario::Resolved;

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum Task {
    Homology { complex: String },
    Extclass { complex: String },
    Splittings { complex: String },
    Homcat { from: String, to: String },
    Compose { first: String, second: String },
    Truncate { objects: Vec<String> },
    Selfcheck {
        #[serde(default)]
        full: bool,
        max_order: Option<u128>,
        seed: Option<u64>,
    },
}

fn ext_group(sc: &Resolved, m: &Complex2, degree: usize) -> Result<ExtGroup> {
    Ok(ExtGroup::new(Arc::new(free_resolution(m.h0(), sc.resolution_length)?), m.h1(), degree)?)
}

/// The 1-morphism named by a map entry: its pair of homology maps and the
/// chosen splitting class of the fiber.
fn one_morphism(sc: &Resolved, name: &str) -> Result<OneMorphism> {
    let e = sc.map(name)?;
    let (m, n) = (sc.complex(&e.from)?, sc.complex(&e.to)?);
    let fiber = hom_fiber(m, n, &e.f0, &e.f1, sc.budget)?;
    let Some(c) = fiber.components().get(e.component) else {
        bail!("map {name}: the fiber has {} components, component {} requested", fiber.pi0(), e.component);
    };
    Ok(OneMorphism::new(m, n, e.f0.clone(), e.f1.clone(), c.rep.clone())?)
}

fn locate(f: &OneMorphism, budget: Budget) -> Result<Value> {
    let fiber = hom_fiber(&f.src, &f.dst, &f.f0, &f.f1, budget)?;
    let component = fiber.component_of(&f.s).ok_or_else(|| anyhow!("composite lies in no component of its fiber"))?;
    Ok(json!({ "f0": f.f0.rows(), "f1": f.f1.rows(), "component": component }))
}

pub fn run_task(task: &Task, sc: &Resolved) -> Result<Value> {
    match task {
        Task::Homology { complex } => {
            let m = sc.complex(complex)?;
            Ok(json!({
                "H0": m.h0().factors(),
                "H1": m.h1().factors(),
                "acyclic": m.is_acyclic(),
                "four_term_exact": m.homology().is_exact(),
            }))
        }
        Task::Extclass { complex } => {
            let m = sc.complex(complex)?;
            let res = Arc::new(free_resolution(m.h0(), sc.resolution_length)?);
            let c = yoneda_class_with(m, res)?;
            Ok(json!({
                "ext2": c.group().module().factors(),
                "zero": c.is_zero(),
                "class": c.element(),
                "cocycle": c.cocycle().rows(),
            }))
        }
        Task::Splittings { complex } => {
            let m = sc.complex(complex)?;
            let g = enumerate_splittings(m, sc.budget)?;
            g.verify()?;
            Ok(json!({
                "pi0": g.pi0(),
                "aut_orders": g.aut_orders(),
                "ext1": ext_group(sc, m, 1)?.module().factors(),
                "hom_h0_h1": hom_count(m.h0(), m.h1()),
            }))
        }
        Task::Homcat { from, to } => {
            let (m, n) = (sc.complex(from)?, sc.complex(to)?);
            let h = hom_category(m, n, sc.budget)?;
            let oracle = derived_hom_oracle(m, n)?.order();
            let fibers: Vec<Value> = h
                .nonempty()
                .iter()
                .map(|f| {
                    let g = f.groupoid.as_ref().expect("nonempty fiber has a groupoid");
                    json!({ "f0": f.f0.rows(), "f1": f.f1.rows(), "pi0": g.pi0(), "aut_orders": g.aut_orders() })
                })
                .collect();
            Ok(json!({
                "pairs": h.fibers.len(),
                "pi0": h.pi0(),
                "fibers": fibers,
                "oracle_order": oracle,
                "matches_oracle": h.pi0() as u128 == oracle,
            }))
        }
        Task::Compose { first, second } => {
            let f = one_morphism(sc, first)?;
            let g = one_morphism(sc, second)?;
            if f.dst != g.src {
                bail!("map {first} ends at a different complex than {second} starts from");
            }
            let x = compose(&f, &g)?;
            let y = compose_kan(&f, &g)?;
            // the Kan functor is built two dimensions higher and is then defined
            // through d_max; adjunction maps are checked two below that
            let w = segal_witness(&kan_functor_to(&f, &g, sc.d_max + 2)?, 1, sc.d_max.saturating_sub(2));
            Ok(json!({
                "zigzag": locate(&x, sc.budget)?,
                "kan": locate(&y, sc.budget)?,
                "isomorphic": x.is_isomorphic(&y),
                "adjunction": { "objects": w.objects, "passed": w.passed(), "failures": w.failures },
            }))
        }
        Task::Truncate { objects } => {
            let objs: Vec<Complex2> = objects.iter().map(|o| sc.complex(o).cloned()).collect::<Result<_>>()?;
            let tr = truncate(&objs, sc.budget)?;
            let n = tr.len();
            let sizes: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| tr.hom_size(i, j)).collect()).collect();
            let axioms = tr.check_axioms()?;
            let mut ends = Vec::new();
            for i in 0..n {
                let k = tr.hom_size(i, i);
                let table: Vec<Vec<usize>> = (0..k)
                    .map(|a| (0..k).map(|b| tr.compose(i, i, i, a, b)).collect::<CoreResult<_>>())
                    .collect::<CoreResult<_>>()?;
                let ring = tr.end_ring(i)?;
                ends.push(json!({
                    "object": objects[i],
                    "table": table,
                    "ring": ring,
                    "dual_numbers": ring.is_dual_numbers(),
                }));
            }
            Ok(json!({ "objects": objects, "hom_sizes": sizes, "axioms": axioms, "end_rings": ends }))
        }
        Task::Selfcheck { full, max_order, seed } => {
            let cfg = Config {
                modulus: sc.ring.modulus(),
                max_order: max_order.unwrap_or(Config::default().max_order),
                full: *full,
                seed: seed.unwrap_or(0),
                budget: sc.budget,
            };
            let rep = selfcheck(&cfg)?;
            let mut v = serde_json::to_value(&rep)?;
            v["passed"] = json!(rep.passed());
            Ok(v)
        }
    }
}
