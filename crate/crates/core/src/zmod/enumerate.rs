//! Bounded brute-force enumeration.

use super::homspace::HomSpace;
use super::map::ModMap;
use super::module::{Ring, ZModule};
use crate::error::{Error, Result};

pub const DEFAULT_LIMIT: u128 = 1_000_000;

/// Upper bound on the number of items any single enumeration may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: DEFAULT_LIMIT }
    }
}

impl Budget {
    pub fn new(limit: u128) -> Self {
        Budget { limit }
    }

    /// Default limit, overridden by `EXT2CAT_ENUM_LIMIT` when set.
    pub fn from_env() -> Self {
        std::env::var("EXT2CAT_ENUM_LIMIT")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }

    pub fn check(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.limit {
            return Err(Error::BoundExceeded { what: what.to_string(), needed, limit: self.limit });
        }
        Ok(())
    }
}

/// All elements of a module, in lexicographic order of coordinates.
pub fn elements(a: &ZModule) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total = a.order();
    let f = a.factors().to_vec();
    (0..total).map(move |mut idx| {
        let mut v = vec![0; f.len()];
        for i in (0..f.len()).rev() {
            v[i] = (idx % f[i] as u128) as i64;
            idx /= f[i] as u128;
        }
        v
    })
}

pub fn enumerate_elements(a: &ZModule, budget: Budget) -> Result<Vec<Vec<i64>>> {
    budget.check("elements", a.order())?;
    Ok(elements(a).collect())
}

/// All homomorphisms `a -> b`.
pub fn enumerate_homs(a: &ZModule, b: &ZModule, budget: Budget) -> Result<Vec<ModMap>> {
    let h = HomSpace::new(a, b);
    budget.check("homomorphisms", h.order())?;
    Ok(elements(h.module()).map(|x| h.decode(&x)).collect())
}

/// All automorphisms of `a`.
pub fn automorphisms(a: &ZModule, budget: Budget) -> Result<Vec<ModMap>> {
    Ok(enumerate_homs(a, a, budget)?.into_iter().filter(|f| f.is_iso()).collect())
}

/// As `modules_of_order`, refusing orders beyond the budget.
pub fn enumerate_modules_of_order(ring: Ring, order: u128, budget: Budget) -> Result<Vec<ZModule>> {
    budget.check("module order", order)?;
    Ok(modules_of_order(ring.modulus(), order))
}

/// Canonical Z/m-modules of the given order, sorted.
pub fn modules_of_order(m: i64, order: u128) -> Vec<ZModule> {
    let mut out = Vec::new();
    chains(m, order, m, &mut Vec::new(), &mut out);
    out.sort();
    out
}

// Factors are chosen from the largest down, each dividing the previous one.
fn chains(m: i64, rest: u128, bound: i64, desc: &mut Vec<i64>, out: &mut Vec<ZModule>) {
    if rest == 1 {
        let asc: Vec<i64> = desc.iter().rev().copied().collect();
        out.push(ZModule::from_factors_unchecked(m, asc));
        return;
    }
    for d in 2..=bound {
        if bound % d != 0 || rest % d as u128 != 0 {
            continue;
        }
        desc.push(d);
        chains(m, rest / d as u128, d, desc, out);
        desc.pop();
    }
}

/// Canonical modules of order at most `max_order`, by order then factors.
pub fn modules_up_to(m: i64, max_order: u128) -> Vec<ZModule> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(modules_of_order(m, n));
    }
    out
}
