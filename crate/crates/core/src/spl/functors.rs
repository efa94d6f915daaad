//! Functors between splitting groupoids induced by composition and by quasi-isomorphisms.

use super::{is_splitting, Splitting};
use crate::cx2::{compose_post, compose_pre, ChainMap2, Complex2, PostComposed, PreComposed};
use crate::error::{Error, Result};
use crate::mutation;
use crate::zmod::{
    direct_sum2, factor_through_injection, factor_through_surjection, pullback, quotient, ModMap,
};

fn check(m: &Complex2, s: &Splitting) -> Result<()> {
    if is_splitting(m, s) {
        Ok(())
    } else {
        Err(Error::Precondition("not a splitting of the given complex".into()))
    }
}

/// `M~ -> (M~ + N) / H_1(M)`, a splitting of `M ∘ f`.
pub fn post_compose_splitting(m: &Complex2, f: &ModMap, s: &Splitting) -> Result<Splitting> {
    let p = compose_post(m, f)?;
    post_compose_splitting_with(&p, m, f, s)
}

pub(crate) fn post_compose_splitting_with(p: &PostComposed, m: &Complex2, f: &ModMap, s: &Splitting) -> Result<Splitting> {
    check(m, s)?;
    let n = f.dst();
    let sign = if mutation::active().flip_post_sign { 1 } else { -1 };
    let sum = direct_sum2(&s.mtil, n);
    let graph = sum.inj[0]
        .after(&s.a)
        .after(m.iota())
        .plus(&sum.inj[1].after(&ModMap::scalar(n, sign).after(f)));
    let gens: Vec<Vec<i64>> = (0..m.h1().rank()).map(|j| graph.image_of_gen(j)).collect();
    let (_, q) = quotient(&sum.module, &gens);
    let src = direct_sum2(m.m1(), n);
    let a_plus_id = sum.inj[0].after(&s.a).after(&src.proj[0]).plus(&sum.inj[1].after(&src.proj[1]));
    // the quotient in compose_post uses the same summand order, so p.quotient has source src.module
    let a = factor_through_surjection(&q.after(&a_plus_id), &p.quotient)?;
    let b = factor_through_surjection(&s.b.after(&sum.proj[0]), &q)?;
    let t = Splitting::new(a, b);
    check(&p.complex, &t)?;
    Ok(t)
}

/// `M~ -> M~ x_{H_0} N`, a splitting of `g ∘ M`.
pub fn pre_compose_splitting(g: &ModMap, m: &Complex2, s: &Splitting) -> Result<Splitting> {
    let p = compose_pre(g, m)?;
    pre_compose_splitting_with(&p, g, m, s)
}

pub(crate) fn pre_compose_splitting_with(p: &PreComposed, g: &ModMap, m: &Complex2, s: &Splitting) -> Result<Splitting> {
    check(m, s)?;
    let n = g.src();
    let (_, pm, pn) = pullback(&m.pi().after(&s.b), g)?;
    let sum = direct_sum2(&s.mtil, n);
    let a = factor_through_injection(&sum.inj[0].after(&s.a), &pm.pair(&pn, &sum))?;
    let base = direct_sum2(m.m0(), n);
    let b = factor_through_injection(&s.b.after(&pm).pair(&pn, &base), &p.to_m0.pair(&p.to_n, &base))?;
    let t = Splitting::new(a, b);
    check(&p.complex, &t)?;
    Ok(t)
}

/// Transfer along a quasi-isomorphism `f: M -> M'` with `f_1` surjective:
/// `M~' = (M~ + M_1') / {(a x, -f_1 x)}`, `a' = [0 + id]`, `b' = [f_0 b + d']`.
pub fn transfer_splitting(f: &ChainMap2, s: &Splitting) -> Result<Splitting> {
    check(f.src(), s)?;
    if !f.is_quasi_iso() {
        return Err(Error::NotQuasiIso(format!("{f:?}")));
    }
    if !f.f1().is_surjective() {
        return Err(Error::Precondition("degree-1 component must be surjective".into()));
    }
    let m2 = f.dst();
    let sum = direct_sum2(&s.mtil, m2.m1());
    let rel = s.a.pair(&f.f1().neg(), &sum);
    let (_, q) = rel.cokernel();
    let a = q.after(&sum.inj[1]);
    let b = factor_through_surjection(&f.f0().after(&s.b).copair(m2.d(), &sum), &q)?;
    let t = Splitting::new(a, b);
    check(m2, &t)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spl::{aut_order, enumerate_splittings, find_morphism};
    use crate::zmod::{Budget, ZModule};

    fn z(m: i64, f: &[i64]) -> ZModule {
        ZModule::new(m, f.to_vec()).unwrap()
    }

    #[test]
    fn functors_on_small_examples() {
        let z2 = z(4, &[2]);
        let z4 = z(4, &[4]);
        let b = Budget::default();
        let m = Complex2::zero_differential(&z2, &z2);
        let g = enumerate_splittings(&m, b).unwrap();
        for s in g.reps() {
            let id1 = ModMap::identity(m.h1());
            let t = post_compose_splitting(&m, &id1, s).unwrap();
            let p = compose_post(&m, &id1).unwrap();
            let gp = enumerate_splittings(&p.complex, b).unwrap();
            assert!(gp.component_of(&t).is_some());
            let zero = ModMap::zero(m.h1(), &z4);
            post_compose_splitting(&m, &zero, s).unwrap();
            let id0 = ModMap::identity(m.h0());
            pre_compose_splitting(&id0, &m, s).unwrap();
            pre_compose_splitting(&ModMap::zero(&z4, m.h0()), &m, s).unwrap();
        }
        // the two components stay distinct after post-composing with an isomorphism
        let id1 = ModMap::identity(m.h1());
        let t: Vec<_> = g.reps().iter().map(|s| post_compose_splitting(&m, &id1, s).unwrap()).collect();
        assert!(find_morphism(&t[0], &t[1]).is_none());
    }

    #[test]
    fn transfer_along_inflation() {
        let z2 = z(4, &[2]);
        let b = Budget::default();
        let target = Complex2::zero_differential(&z2, &z2);
        // target plus the acyclic [Z/4 -id-> Z/4], projected away
        let v = z(4, &[2, 4]);
        let src = Complex2::new(ModMap::new(&v, &v, &[vec![0, 0], vec![0, 1]]).unwrap());
        let f1 = ModMap::new(&v, &z2, &[vec![1, 0]]).unwrap();
        let f0 = f1.clone();
        let f = ChainMap2::new(&src, &target, f1, f0).unwrap();
        assert!(f.is_quasi_iso());
        let gs = enumerate_splittings(&src, b).unwrap();
        let gt = enumerate_splittings(&target, b).unwrap();
        assert_eq!(gs.pi0(), gt.pi0());
        let mut hit = vec![false; gt.pi0()];
        for s in gs.reps() {
            let t = transfer_splitting(&f, s).unwrap();
            let k = gt.component_of(&t).unwrap();
            hit[k] = true;
            assert_eq!(aut_order(s), aut_order(&t));
        }
        assert!(hit.iter().all(|&h| h));
        assert!(transfer_splitting(&ChainMap2::identity(&target), gt.reps()[0]).is_ok());
    }
}
