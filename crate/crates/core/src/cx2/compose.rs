use super::{ChainMap2, Complex2};
use crate::error::{Error, Result};
use crate::mutation;
use crate::zmod::{direct_sum2, factor_through_injection, factor_through_surjection, pullback, quotient, ModMap};

/// `M ∘ f = [(M_1 + N) / H_1(M) -> M_0]` with its identifications.
#[derive(Clone, Debug)]
pub struct PostComposed {
    pub complex: Complex2,
    /// `M_1 + N -> P_1`.
    pub quotient: ModMap,
    /// `N -> P_1`, `n -> [(0, n)]`.
    pub from_n: ModMap,
    /// The chain map `M -> M ∘ f`, identity in degree 0.
    pub from_m: ChainMap2,
    /// `N -> H_1(M ∘ f)`.
    pub h1_iso: ModMap,
    /// `H_0(M) -> H_0(M ∘ f)`.
    pub h0_iso: ModMap,
}

/// Push the complex forward along `f: H_1(M) -> N`.
pub fn compose_post(m: &Complex2, f: &ModMap) -> Result<PostComposed> {
    if f.src() != m.h1() {
        return Err(Error::Mismatch(format!("map starts at {:?}, expected H1 = {:?}", f.src(), m.h1())));
    }
    let n = f.dst();
    let sign = if mutation::active().flip_post_sign { 1 } else { -1 };
    let sum = direct_sum2(m.m1(), n);
    let graph = sum.inj[0].after(m.iota()).plus(&sum.inj[1].after(&ModMap::scalar(n, sign).after(f)));
    let gens: Vec<Vec<i64>> = (0..m.h1().rank()).map(|j| graph.image_of_gen(j)).collect();
    let (p1, q) = quotient(&sum.module, &gens);
    let d = factor_through_surjection(&m.d().after(&sum.proj[0]), &q)?;
    let complex = Complex2::new(d);
    let from_n = q.after(&sum.inj[1]);
    let from_m = ChainMap2::new(m, &complex, q.after(&sum.inj[0]), ModMap::identity(m.m0()))?;
    let h1_iso = complex.factor_through_cycles(&from_n)?;
    let h0_iso = from_m.h0();
    if !h1_iso.is_iso() || !h0_iso.is_iso() {
        return Err(Error::Internal(format!("homology identifications of {m:?} ∘ f fail")));
    }
    debug_assert_eq!(p1.order() * m.h1().order(), m.m1().order() * n.order());
    Ok(PostComposed { complex, quotient: q, from_n, from_m, h1_iso, h0_iso })
}

/// `g ∘ M = [M_1 -> M_0 x_{H_0} N]` with its identifications.
#[derive(Clone, Debug)]
pub struct PreComposed {
    pub complex: Complex2,
    /// `P_0 -> M_0`.
    pub to_m0: ModMap,
    /// `P_0 -> N`.
    pub to_n: ModMap,
    /// The chain map `g ∘ M -> M`, identity in degree 1.
    pub to_m: ChainMap2,
    /// `H_0(g ∘ M) -> N`.
    pub h0_iso: ModMap,
    /// `H_1(g ∘ M) -> H_1(M)`.
    pub h1_iso: ModMap,
}

/// Pull the complex back along `g: N -> H_0(M)`.
pub fn compose_pre(g: &ModMap, m: &Complex2) -> Result<PreComposed> {
    if g.dst() != m.h0() {
        return Err(Error::Mismatch(format!("map ends at {:?}, expected H0 = {:?}", g.dst(), m.h0())));
    }
    let (p0, pa, pb) = pullback(m.pi(), g)?;
    let sum = direct_sum2(m.m0(), g.src());
    let pair = sum.inj[0].after(&pa).plus(&sum.inj[1].after(&pb));
    let d = factor_through_injection(&sum.inj[0].after(m.d()), &pair)?;
    debug_assert_eq!(d.dst(), &p0);
    let complex = Complex2::new(d);
    let to_m = ChainMap2::new(&complex, m, ModMap::identity(m.m1()), pa.clone())?;
    let h0_iso = complex.factor_through_h0(&pb)?;
    let h1_iso = to_m.h1();
    if !h1_iso.is_iso() || !h0_iso.is_iso() {
        return Err(Error::Internal(format!("homology identifications of g ∘ {m:?} fail")));
    }
    Ok(PreComposed { complex, to_m0: pa, to_n: pb, to_m, h0_iso, h1_iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::ZModule;

    fn z(m: i64, f: &[i64]) -> ZModule {
        ZModule::new(m, f.to_vec()).unwrap()
    }

    #[test]
    fn post_and_pre_examples() {
        let z4 = z(4, &[4]);
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        let id1 = ModMap::identity(m.h1());
        let p = compose_post(&m, &id1).unwrap();
        assert_eq!(p.complex.h0(), m.h0());
        assert_eq!(p.complex.h1(), m.h1());
        assert!(p.from_m.is_quasi_iso());

        let n = z(4, &[2, 4]);
        let zero = ModMap::zero(m.h1(), &n);
        let p = compose_post(&m, &zero).unwrap();
        assert_eq!(p.complex.h1(), &n);
        assert_eq!(p.complex.m1().order(), 2 * n.order());

        let id0 = ModMap::identity(m.h0());
        let q = compose_pre(&id0, &m).unwrap();
        assert!(q.to_m.is_quasi_iso());
        let zero = ModMap::zero(&n, m.h0());
        let q = compose_pre(&zero, &m).unwrap();
        assert_eq!(q.complex.h0(), &n);
        assert_eq!(q.complex.h1(), m.h1());
        assert!(compose_pre(&ModMap::identity(&z4), &m).is_err());
    }
}
