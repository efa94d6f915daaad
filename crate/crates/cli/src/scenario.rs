//! Scenario files: one JSON document naming complexes, homology maps, a task
//! list and budgets.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use ext2cat_core::cx2::Complex2;
use ext2cat_core::zmod::{Budget, ModMap, Ring, ZModule};
use serde::{Deserialize, Serialize};

pub const DEFAULT_D_MAX: usize = 4;
pub const DEFAULT_RESOLUTION_LENGTH: usize = 4;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(rename = "M1")]
    pub m1: Vec<i64>,
    #[serde(rename = "M0")]
    pub m0: Vec<i64>,
    /// Rows index generators of `M0`.
    #[serde(default)]
    pub d: Vec<Vec<i64>>,
}

/// A pair of maps on homology, `f0: H0 -> H0'` and `f1: H1 -> H1'`, in the
/// canonical bases of the homology modules. `component` picks a splitting
/// class in the fiber when the pair is used as a 1-morphism.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub f0: Vec<Vec<i64>>,
    #[serde(default)]
    pub f1: Vec<Vec<i64>>,
    #[serde(default)]
    pub component: usize,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    pub enum_limit: Option<u128>,
    pub d_max: Option<usize>,
    pub resolution_length: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub modulus: i64,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    pub tasks: Vec<serde_json::Value>,
    #[serde(default)]
    pub budgets: Budgets,
}

pub struct MapEntry {
    pub from: String,
    pub to: String,
    pub f0: ModMap,
    pub f1: ModMap,
    pub component: usize,
}

/// A scenario with every complex and map built and type-checked.
pub struct Resolved {
    pub ring: Ring,
    pub complexes: BTreeMap<String, Complex2>,
    pub maps: BTreeMap<String, MapEntry>,
    pub budget: Budget,
    pub d_max: usize,
    pub resolution_length: usize,
}

pub fn parse(text: &str) -> Result<Scenario> {
    serde_json::from_str(text).map_err(|e| anyhow!("scenario does not parse at line {}, column {}: {e}", e.line(), e.column()))
}

fn matrix(rows: &[Vec<i64>], src: &ZModule, dst: &ZModule) -> Result<ModMap> {
    // a map out of or into the zero module may be written as []
    if rows.is_empty() && (src.rank() == 0 || dst.rank() == 0) {
        return Ok(ModMap::zero(src, dst));
    }
    Ok(ModMap::new(src, dst, rows)?)
}

impl Scenario {
    pub fn resolve(&self) -> Result<Resolved> {
        let ring = Ring::new(self.modulus)?;
        let mut complexes = BTreeMap::new();
        for (name, c) in &self.complexes {
            let m1 = ring.module(&c.m1).with_context(|| format!("complex {name}: M1"))?;
            let m0 = ring.module(&c.m0).with_context(|| format!("complex {name}: M0"))?;
            let d = matrix(&c.d, &m1, &m0).with_context(|| format!("complex {name}: d"))?;
            complexes.insert(name.clone(), Complex2::new(d));
        }
        let mut maps = BTreeMap::new();
        for (name, f) in &self.maps {
            let get = |c: &str| complexes.get(c).ok_or_else(|| anyhow!("map {name} refers to unknown complex {c}"));
            let (m, n) = (get(&f.from)?, get(&f.to)?);
            let f0 = matrix(&f.f0, m.h0(), n.h0()).with_context(|| format!("map {name}: f0"))?;
            let f1 = matrix(&f.f1, m.h1(), n.h1()).with_context(|| format!("map {name}: f1"))?;
            maps.insert(name.clone(), MapEntry { from: f.from.clone(), to: f.to.clone(), f0, f1, component: f.component });
        }
        let budget = self.budgets.enum_limit.map(Budget::new).unwrap_or_else(Budget::from_env);
        let d_max = self.budgets.d_max.unwrap_or(DEFAULT_D_MAX);
        let resolution_length = self.budgets.resolution_length.unwrap_or(DEFAULT_RESOLUTION_LENGTH);
        if resolution_length < 3 {
            bail!("resolution_length must be at least 3 to reach Ext^2");
        }
        Ok(Resolved { ring, complexes, maps, budget, d_max, resolution_length })
    }
}

impl Resolved {
    pub fn complex(&self, name: &str) -> Result<&Complex2> {
        self.complexes.get(name).ok_or_else(|| anyhow!("unknown complex {name}"))
    }

    pub fn map(&self, name: &str) -> Result<&MapEntry> {
        self.maps.get(name).ok_or_else(|| anyhow!("unknown map {name}"))
    }
}
