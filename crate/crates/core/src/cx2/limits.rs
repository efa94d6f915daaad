//! Termwise pullbacks and cokernels of length-2 complexes.

use super::{ChainMap2, Complex2};
use crate::error::{Error, Result};
use crate::zmod::{direct_sum, direct_sum2, factor_through_injection, factor_through_surjection, pullback, ModMap};

/// A pullback `A x_C B` with its projections.
#[derive(Clone, Debug)]
pub struct ComplexPullback {
    pub complex: Complex2,
    pub pa: ChainMap2,
    pub pb: ChainMap2,
}

impl ComplexPullback {
    /// The map `X -> A x_C B` induced by `x: X -> A` and `y: X -> B`.
    pub fn induced(&self, x: &ChainMap2, y: &ChainMap2) -> Result<ChainMap2> {
        let p = &self.complex;
        let leg = |xa: &ModMap, yb: &ModMap, pa: &ModMap, pb: &ModMap| -> Result<ModMap> {
            let sum = direct_sum2(xa.dst(), yb.dst());
            factor_through_injection(&xa.pair(yb, &sum), &pa.pair(pb, &sum))
        };
        let f1 = leg(x.f1(), y.f1(), self.pa.f1(), self.pb.f1())?;
        let f0 = leg(x.f0(), y.f0(), self.pa.f0(), self.pb.f0())?;
        ChainMap2::new(x.src(), p, f1, f0)
    }
}

pub fn complex_pullback(alpha: &ChainMap2, beta: &ChainMap2) -> Result<ComplexPullback> {
    if alpha.dst() != beta.dst() {
        return Err(Error::Mismatch("pullback of chain maps with different targets".into()));
    }
    let (_, a1, b1) = pullback(alpha.f1(), beta.f1())?;
    let (_, a0, b0) = pullback(alpha.f0(), beta.f0())?;
    let sum = direct_sum2(alpha.src().m0(), beta.src().m0());
    let d = factor_through_injection(
        &alpha.src().d().after(&a1).pair(&beta.src().d().after(&b1), &sum),
        &a0.pair(&b0, &sum),
    )?;
    let complex = Complex2::new(d);
    let pa = ChainMap2::new(&complex, alpha.src(), a1, a0)?;
    let pb = ChainMap2::new(&complex, beta.src(), b1, b0)?;
    Ok(ComplexPullback { complex, pa, pb })
}

/// A direct sum of complexes with its injections and projections.
#[derive(Clone, Debug)]
pub struct ComplexSum {
    pub complex: Complex2,
    pub inj: Vec<ChainMap2>,
    pub proj: Vec<ChainMap2>,
}

impl ComplexSum {
    /// The map `X -> ⊕ A_i` with components `maps[i]`.
    pub fn pair(&self, maps: &[ChainMap2]) -> ChainMap2 {
        maps.iter()
            .zip(&self.inj)
            .map(|(h, i)| i.after(h))
            .reduce(|a, b| a.plus(&b))
            .expect("nonempty sum")
    }
}

pub fn complex_sum(parts: &[&Complex2]) -> ComplexSum {
    let s1 = direct_sum(&parts.iter().map(|c| c.m1()).collect::<Vec<_>>());
    let s0 = direct_sum(&parts.iter().map(|c| c.m0()).collect::<Vec<_>>());
    let d = parts
        .iter()
        .enumerate()
        .map(|(i, c)| s0.inj[i].after(c.d()).after(&s1.proj[i]))
        .reduce(|a, b| a.plus(&b))
        .expect("nonempty sum");
    let complex = Complex2::new(d);
    let inj = (0..parts.len())
        .map(|i| ChainMap2::new(parts[i], &complex, s1.inj[i].clone(), s0.inj[i].clone()).expect("injection is a chain map"))
        .collect();
    let proj = (0..parts.len())
        .map(|i| ChainMap2::new(&complex, parts[i], s1.proj[i].clone(), s0.proj[i].clone()).expect("projection is a chain map"))
        .collect();
    ComplexSum { complex, inj, proj }
}

/// Termwise cokernel of a chain map, with the quotient map.
pub fn complex_cokernel(phi: &ChainMap2) -> Result<(Complex2, ChainMap2)> {
    let (_, q1) = phi.f1().cokernel();
    let (_, q0) = phi.f0().cokernel();
    let d = factor_through_surjection(&q0.after(phi.dst().d()), &q1)?;
    let c = Complex2::new(d);
    let q = ChainMap2::new(phi.dst(), &c, q1, q0)?;
    Ok((c, q))
}

/// The map `Q -> Y` induced by `f: X -> Y` along a termwise surjection `q: X -> Q`.
pub fn descend(f: &ChainMap2, q: &ChainMap2) -> Result<ChainMap2> {
    let f1 = factor_through_surjection(f.f1(), q.f1())?;
    let f0 = factor_through_surjection(f.f0(), q.f0())?;
    ChainMap2::new(q.dst(), f.dst(), f1, f0)
}

impl ChainMap2 {
    pub fn is_iso(&self) -> bool {
        self.f1().is_iso() && self.f0().is_iso()
    }

    pub fn inverse(&self) -> Result<ChainMap2> {
        ChainMap2::new(self.dst(), self.src(), self.f1().inverse()?, self.f0().inverse()?)
    }

    pub fn minus(&self, other: &ChainMap2) -> ChainMap2 {
        self.plus(&other.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::ZModule;

    #[test]
    fn pullback_over_zero_is_product() {
        let z4 = ZModule::new(4, vec![4]).unwrap();
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        let zero = Complex2::zero_differential(&ZModule::new(4, vec![]).unwrap(), &ZModule::new(4, vec![]).unwrap());
        let a = ChainMap2::zero(&m, &zero);
        let p = complex_pullback(&a, &a).unwrap();
        assert_eq!(p.complex.m1().order(), 16);
        assert_eq!(p.complex.h1().order(), 4);
        let id = ChainMap2::identity(&m);
        let diag = p.induced(&id, &id).unwrap();
        assert_eq!(p.pa.after(&diag), id);
        let (c, q) = complex_cokernel(&ChainMap2::identity(&m)).unwrap();
        assert_eq!(c.order(), 1);
        assert!(descend(&ChainMap2::zero(&m, &m), &q).is_ok());
        assert!(id.is_iso() && id.inverse().unwrap() == id);
    }
}
