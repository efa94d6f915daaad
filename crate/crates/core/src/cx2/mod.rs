//! Length-2 complexes `[M_1 -d-> M_0]`, chain maps and homology.

mod compose;
mod dk;
mod limits;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use compose::{compose_post, compose_pre, PostComposed, PreComposed};
pub use dk::{dk_normalize, dk_simplicial, SimplicialModule};
pub use limits::{complex_cokernel, complex_pullback, complex_sum, descend, ComplexPullback, ComplexSum};

use crate::error::{Error, Result};
use crate::zmod::{pushout, ModMap, Preimages, ZModule};

/// The four-term exact sequence `0 -> H_1 -> M_1 -> M_0 -> H_0 -> 0`.
#[derive(Clone, Debug)]
pub struct FourTerm {
    pub h1: ZModule,
    pub iota: ModMap,
    pub d: ModMap,
    pub h0: ZModule,
    pub pi: ModMap,
}

impl FourTerm {
    /// Exactness at every spot, by orders and vanishing composites.
    pub fn is_exact(&self) -> bool {
        let im_d = self.d.image_order();
        self.iota.is_injective()
            && self.pi.is_surjective()
            && self.d.after(&self.iota).is_zero()
            && self.pi.after(&self.d).is_zero()
            && self.h1.order() * im_d == self.d.src().order()
            && im_d * self.h0.order() == self.d.dst().order()
    }
}

#[derive(Debug)]
struct HomologyCache {
    four: FourTerm,
    iota_solver: Preimages,
    pi_solver: Preimages,
}

/// A length-2 complex.
#[derive(Clone)]
pub struct Complex2 {
    d: ModMap,
    cache: Arc<OnceLock<HomologyCache>>,
}

impl PartialEq for Complex2 {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

impl Eq for Complex2 {}

impl std::hash::Hash for Complex2 {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.d.hash(state)
    }
}

impl fmt::Debug for Complex2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} -{:?}-> {:?}]", self.m1(), self.d.matrix(), self.m0())
    }
}

impl fmt::Display for Complex2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} -> {}]", self.m1(), self.m0())
    }
}

impl Complex2 {
    pub fn new(d: ModMap) -> Self {
        Complex2 { d, cache: Arc::new(OnceLock::new()) }
    }

    /// `[A -0-> B]`.
    pub fn zero_differential(a: &ZModule, b: &ZModule) -> Self {
        Self::new(ModMap::zero(a, b))
    }

    /// `[A -id-> A]`.
    pub fn identity_on(a: &ZModule) -> Self {
        Self::new(ModMap::identity(a))
    }

    pub fn m1(&self) -> &ZModule {
        self.d.src()
    }

    pub fn m0(&self) -> &ZModule {
        self.d.dst()
    }

    pub fn d(&self) -> &ModMap {
        &self.d
    }

    pub fn modulus(&self) -> i64 {
        self.m1().modulus()
    }

    fn cache(&self) -> &HomologyCache {
        self.cache.get_or_init(|| {
            let (h1, iota) = self.d.kernel();
            let (h0, pi) = self.d.cokernel();
            let four = FourTerm { h1, iota: iota.clone(), d: self.d.clone(), h0, pi: pi.clone() };
            debug_assert!(four.is_exact());
            HomologyCache { iota_solver: iota.solver(), pi_solver: pi.solver(), four }
        })
    }

    pub fn homology(&self) -> &FourTerm {
        &self.cache().four
    }

    pub fn h0(&self) -> &ZModule {
        &self.homology().h0
    }

    pub fn h1(&self) -> &ZModule {
        &self.homology().h1
    }

    /// `H_1 -> M_1`.
    pub fn iota(&self) -> &ModMap {
        &self.homology().iota
    }

    /// `M_0 -> H_0`.
    pub fn pi(&self) -> &ModMap {
        &self.homology().pi
    }

    /// The `H_1` coordinates of a cycle.
    pub fn cycle_class(&self, x: &[i64]) -> Option<Vec<i64>> {
        self.cache().iota_solver.preimage(x)
    }

    /// Some lift to `M_0` of a class in `H_0`.
    pub fn lift_h0(&self, y: &[i64]) -> Vec<i64> {
        self.cache().pi_solver.preimage(y).expect("projection onto H0 is surjective")
    }

    /// A map into `H_1` given by a map into `M_1` that lands in cycles.
    pub fn factor_through_cycles(&self, f: &ModMap) -> Result<ModMap> {
        let imgs = (0..f.src().rank())
            .map(|j| {
                self.cycle_class(&f.image_of_gen(j))
                    .ok_or_else(|| Error::Precondition("map does not land in cycles".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        ModMap::from_images(f.src(), self.h1(), &imgs)
    }

    /// A map out of `H_0` given by a map out of `M_0` killing boundaries.
    pub fn factor_through_h0(&self, f: &ModMap) -> Result<ModMap> {
        if !f.after(&self.d).is_zero() {
            return Err(Error::Precondition("map does not kill boundaries".into()));
        }
        let imgs: Vec<Vec<i64>> = (0..self.h0().rank())
            .map(|j| f.apply(&self.lift_h0(&self.h0().basis(j))))
            .collect();
        ModMap::from_images(self.h0(), f.dst(), &imgs)
    }

    pub fn is_acyclic(&self) -> bool {
        self.h0().is_zero() && self.h1().is_zero()
    }

    /// Total order, used for sweeps.
    pub fn order(&self) -> u128 {
        self.m1().order() * self.m0().order()
    }
}

/// A chain map `f: M -> N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainMap2 {
    src: Complex2,
    dst: Complex2,
    f1: ModMap,
    f0: ModMap,
}

impl fmt::Debug for ChainMap2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.f1.matrix(), self.f0.matrix())
    }
}

impl ChainMap2 {
    pub fn new(src: &Complex2, dst: &Complex2, f1: ModMap, f0: ModMap) -> Result<Self> {
        if f1.src() != src.m1() || f1.dst() != dst.m1() || f0.src() != src.m0() || f0.dst() != dst.m0() {
            return Err(Error::Mismatch("chain map components do not match the complexes".into()));
        }
        if f0.after(src.d()) != dst.d().after(&f1) {
            return Err(Error::IllDefinedMap("square does not commute".into()));
        }
        Ok(ChainMap2 { src: src.clone(), dst: dst.clone(), f1, f0 })
    }

    pub fn identity(m: &Complex2) -> Self {
        ChainMap2 {
            src: m.clone(),
            dst: m.clone(),
            f1: ModMap::identity(m.m1()),
            f0: ModMap::identity(m.m0()),
        }
    }

    pub fn zero(src: &Complex2, dst: &Complex2) -> Self {
        ChainMap2 {
            src: src.clone(),
            dst: dst.clone(),
            f1: ModMap::zero(src.m1(), dst.m1()),
            f0: ModMap::zero(src.m0(), dst.m0()),
        }
    }

    pub fn src(&self) -> &Complex2 {
        &self.src
    }

    pub fn dst(&self) -> &Complex2 {
        &self.dst
    }

    pub fn f1(&self) -> &ModMap {
        &self.f1
    }

    pub fn f0(&self) -> &ModMap {
        &self.f0
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap2) -> ChainMap2 {
        assert_eq!(first.dst, self.src, "chain map composition mismatch");
        ChainMap2 {
            src: first.src.clone(),
            dst: self.dst.clone(),
            f1: self.f1.after(&first.f1),
            f0: self.f0.after(&first.f0),
        }
    }

    pub fn plus(&self, other: &ChainMap2) -> ChainMap2 {
        ChainMap2 {
            src: self.src.clone(),
            dst: self.dst.clone(),
            f1: self.f1.plus(&other.f1),
            f0: self.f0.plus(&other.f0),
        }
    }

    pub fn neg(&self) -> ChainMap2 {
        ChainMap2 { src: self.src.clone(), dst: self.dst.clone(), f1: self.f1.neg(), f0: self.f0.neg() }
    }

    /// Induced map on `H_1`.
    pub fn h1(&self) -> ModMap {
        self.dst
            .factor_through_cycles(&self.f1.after(self.src.iota()))
            .expect("chain maps preserve cycles")
    }

    /// Induced map on `H_0`.
    pub fn h0(&self) -> ModMap {
        self.src
            .factor_through_h0(&self.dst.pi().after(&self.f0))
            .expect("chain maps preserve boundaries")
    }

    pub fn is_quasi_iso(&self) -> bool {
        let q = self.h0().is_iso() && self.h1().is_iso();
        if self.f1.is_surjective() {
            debug_assert_eq!(q, self.square_criterion(), "quasi-iso criterion disagrees for {self:?}");
        }
        q
    }

    /// For `f_1` surjective: the square is cocartesian and `H_1(f)` is injective.
    pub fn square_criterion(&self) -> bool {
        let (_, i0, i1) = pushout(self.src.d(), &self.f1).expect("span shares its source");
        // the comparison map from the pushout is determined on both legs
        let q = i0.dst().clone();
        let gens: Vec<Vec<i64>> = (0..q.rank()).map(|j| q.basis(j)).collect();
        let sum = crate::zmod::direct_sum2(self.src.m0(), self.dst.m1());
        let to_q = i0.copair(&i1, &sum);
        let to_n0 = self.f0.copair(self.dst.d(), &sum);
        let sol = to_q.solver();
        let imgs: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| to_n0.apply(&sol.preimage(g).expect("pushout legs are jointly surjective")))
            .collect();
        let cmp = ModMap::from_images(&q, self.dst.m0(), &imgs).expect("comparison map is well defined");
        cmp.is_iso() && self.h1().is_injective()
    }

    pub fn is_tight(&self) -> bool {
        self.f1.is_iso() && self.h0().is_injective()
    }

    pub fn is_termwise_surjective(&self) -> bool {
        self.f1.is_surjective() && self.f0.is_surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::{enumerate_homs, modules_up_to, Budget};

    fn z(m: i64, f: &[i64]) -> ZModule {
        ZModule::new(m, f.to_vec()).unwrap()
    }

    #[test]
    fn homology_examples() {
        let z4 = z(4, &[4]);
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        assert_eq!(m.h0().factors(), &[2]);
        assert_eq!(m.h1().factors(), &[2]);
        assert!(m.homology().is_exact());
        let idc = Complex2::identity_on(&z(4, &[2, 4]));
        assert!(idc.is_acyclic());
        let a = z(4, &[2]);
        let b = z(4, &[2, 4]);
        let zc = Complex2::zero_differential(&a, &b);
        assert_eq!(zc.h1(), &a);
        assert_eq!(zc.h0(), &b);
    }

    #[test]
    fn reduction_mod_two_is_not_quasi_iso() {
        let z4 = z(4, &[4]);
        let z2 = z(4, &[2]);
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        let n = Complex2::zero_differential(&z2, &z2);
        let r = ModMap::new(&z4, &z2, &[vec![1]]).unwrap();
        let f = ChainMap2::new(&m, &n, r.clone(), r).unwrap();
        assert!(f.h0().is_iso());
        assert!(!f.h1().is_iso());
        assert!(!f.is_quasi_iso());
        assert!(!f.square_criterion());
        assert!(ChainMap2::identity(&m).is_quasi_iso());
        assert!(ChainMap2::identity(&m).is_tight());
    }

    #[test]
    fn square_criterion_agrees_exhaustively() {
        let mods = modules_up_to(4, 4);
        let b = Budget::default();
        let mut complexes = Vec::new();
        for a in &mods {
            for c in &mods {
                for d in enumerate_homs(a, c, b).unwrap() {
                    complexes.push(Complex2::new(d));
                }
            }
        }
        let mut checked = 0;
        for m in &complexes {
            for n in &complexes {
                for f1 in enumerate_homs(m.m1(), n.m1(), b).unwrap() {
                    if !f1.is_surjective() {
                        continue;
                    }
                    for f0 in enumerate_homs(m.m0(), n.m0(), b).unwrap() {
                        if let Ok(f) = ChainMap2::new(m, n, f1.clone(), f0) {
                            let q = f.h0().is_iso() && f.h1().is_iso();
                            assert_eq!(q, f.square_criterion(), "{m:?} -> {n:?} via {f:?}");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 100);
    }
}
