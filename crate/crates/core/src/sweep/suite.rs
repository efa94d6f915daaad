//! The test population: complexes up to isomorphism with bounded module
//! orders, and a few named ones.

use std::collections::HashSet;

use crate::cx2::Complex2;
use crate::error::Result;
use crate::zmod::{automorphisms, enumerate_homs, modules_up_to, Budget, ModMap, ZModule};

/// One representative per orbit of `Aut(M_1) x Aut(M_0)` on `Hom(M_1, M_0)`,
/// over all canonical `M_1`, `M_0` of order at most `max_order`.
pub fn complexes_up_to_iso(m: i64, max_order: u128, budget: Budget) -> Result<Vec<Complex2>> {
    let mods = modules_up_to(m, max_order);
    let mut out = Vec::new();
    for m1 in &mods {
        for m0 in &mods {
            out.extend(orbit_reps(m1, m0, budget)?);
        }
    }
    Ok(out)
}

fn orbit_reps(m1: &ZModule, m0: &ZModule, budget: Budget) -> Result<Vec<Complex2>> {
    let a1 = automorphisms(m1, budget)?;
    let inv1: Vec<ModMap> = a1.iter().map(|a| a.inverse()).collect::<Result<_>>()?;
    let a0 = automorphisms(m0, budget)?;
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    let mut reps = Vec::new();
    for d in enumerate_homs(m1, m0, budget)? {
        if seen.contains(&d.rows()) {
            continue;
        }
        for b in &a0 {
            let bd = b.after(&d);
            for a in &inv1 {
                seen.insert(bd.after(a).rows());
            }
        }
        reps.push(Complex2::new(d));
    }
    Ok(reps)
}

/// Named complexes: the split and twisted complexes with `H_0 = H_1 = Z/2`,
/// an acyclic one, and modules concentrated in one degree.
pub fn named(m: i64) -> Result<Vec<(String, Complex2)>> {
    let ring = crate::zmod::Ring::new(m)?;
    let free = ring.free(1);
    let mut out = Vec::new();
    if m % 2 == 0 {
        let z2 = ring.module(&[2])?;
        out.push(("split".to_string(), Complex2::zero_differential(&z2, &z2)));
        if m % 4 == 0 {
            out.push(("twisted".to_string(), Complex2::new(ModMap::scalar(&free, 2))));
        }
        out.push(("acyclic".to_string(), Complex2::identity_on(&z2)));
    }
    let zero = ring.zero();
    out.push(("free0".to_string(), Complex2::zero_differential(&zero, &free)));
    out.push(("free1".to_string(), Complex2::zero_differential(&free, &zero)));
    Ok(out)
}
