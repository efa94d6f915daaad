//! The 2-category of length-2 complexes: morphism groupoids as splitting
//! groupoids of a composed complex, zigzags, composition and truncation.
//!
//! A 1-morphism `M -> N` over `(f_0, f_1)` is a splitting of
//! `P(M, N, f_0, f_1) = (f_1 + id) ∘ (M + N) ∘ (id + (-f_0))`: pull `M + N`
//! back along `x -> (x, -f_0 x)` on `H_0`, then push it forward along
//! `(x, y) -> f_1 x + y` on `H_1`.

mod oracle;
mod truncate;
mod zigzag;

pub use oracle::{derived_compose, derived_hom_oracle, derived_hom_with, homotopy_classes, DerivedHom, HomotopyClasses, ResolutionKind};
pub use truncate::{truncate, AxiomReport, RingCheck, Truncation};
pub use zigzag::{
    compose, compose_kan, compose_zigzag, from_zigzag, from_zigzag_with, kan_functor, kan_functor_to, to_zigzag, zigzag_of_chain_map, Zigzag,
};

use std::fmt;

use crate::cx2::{complex_sum, compose_post, compose_pre, Complex2, ComplexSum, PostComposed, PreComposed};
use crate::error::{Error, Result};
use crate::ext::{ext_postcompose, ext_precompose_with, yoneda_class, YonedaClass};
use crate::spl::{enumerate_splittings, find_morphism, is_splitting, MorphismSpace, SplGroupoid, Splitting};
use crate::zmod::{enumerate_homs, Budget, ModMap};

/// `P(M, N, f_0, f_1)` with the pieces it is built from.
#[derive(Clone, Debug)]
pub struct Composite {
    pub sum: ComplexSum,
    pub pre: PreComposed,
    pub post: PostComposed,
}

impl Composite {
    pub fn complex(&self) -> &Complex2 {
        &self.post.complex
    }

    /// `M_1 + N_1 -> P_1`, surjective.
    pub fn quotient(&self) -> &ModMap {
        self.post.from_m.f1()
    }

    /// `P_0 -> M_0 + N_0`.
    pub fn to_sum0(&self) -> &ModMap {
        &self.pre.to_m0
    }
}

fn check_types(m: &Complex2, n: &Complex2, f0: &ModMap, f1: &ModMap) -> Result<()> {
    if f0.src() != m.h0() || f0.dst() != n.h0() || f1.src() != m.h1() || f1.dst() != n.h1() {
        return Err(Error::Mismatch("(f0, f1) are not maps H(M) -> H(N)".into()));
    }
    Ok(())
}

fn pull_back(sum: &ComplexSum, f0: &ModMap) -> Result<PreComposed> {
    let g = sum.inj[0].h0().minus(&sum.inj[1].h0().after(f0));
    compose_pre(&g, &sum.complex)
}

fn push_forward(sum: ComplexSum, pre: PreComposed, f1: &ModMap) -> Result<Composite> {
    let k = f1.after(&sum.proj[0].h1()).plus(&sum.proj[1].h1());
    let post = compose_post(&pre.complex, &k.after(&pre.h1_iso))?;
    if !post.from_m.f1().is_surjective() {
        return Err(Error::Internal("M_1 + N_1 does not cover the composed complex".into()));
    }
    Ok(Composite { sum, pre, post })
}

pub fn composite(m: &Complex2, n: &Complex2, f0: &ModMap, f1: &ModMap) -> Result<Composite> {
    check_types(m, n, f0, f1)?;
    let sum = complex_sum(&[m, n]);
    let pre = pull_back(&sum, f0)?;
    push_forward(sum, pre, f1)
}

/// `f_1 ∘ μ = ν ∘ f_0` in `Ext²(H_0 M, H_1 N)`.
pub fn fiber_criterion(m: &Complex2, n: &Complex2, f0: &ModMap, f1: &ModMap) -> Result<bool> {
    let fam = FiberFamily::new(m, n)?;
    fam.left(f1)?.equals(&fam.right(f0)?)
}

/// The composites `P(M, N, f_0, f_1)` for fixed `M` and `N`, sharing the
/// direct sum and, across `f_1`, the pullback along `f_0`.
#[derive(Clone)]
pub struct FiberFamily {
    pub m: Complex2,
    pub n: Complex2,
    sum: ComplexSum,
    mu: YonedaClass,
    nu: YonedaClass,
}

impl FiberFamily {
    pub fn new(m: &Complex2, n: &Complex2) -> Result<Self> {
        Ok(FiberFamily { m: m.clone(), n: n.clone(), sum: complex_sum(&[m, n]), mu: yoneda_class(m)?, nu: yoneda_class(n)? })
    }

    /// The pullback along `x -> (x, -f_0 x)`.
    pub fn pull(&self, f0: &ModMap) -> Result<PreComposed> {
        check_types(&self.m, &self.n, f0, &ModMap::zero(self.m.h1(), self.n.h1()))?;
        pull_back(&self.sum, f0)
    }

    /// `P(M, N, f_0, f_1)` from the pullback along `f_0`.
    pub fn composite(&self, pre: &PreComposed, f1: &ModMap) -> Result<Composite> {
        if f1.src() != self.m.h1() || f1.dst() != self.n.h1() {
            return Err(Error::Mismatch("f1 is not a map H1(M) -> H1(N)".into()));
        }
        push_forward(self.sum.clone(), pre.clone(), f1)
    }

    /// `f_1 ∘ μ`.
    pub fn left(&self, f1: &ModMap) -> Result<YonedaClass> {
        ext_postcompose(f1, &self.mu)
    }

    /// `ν ∘ f_0`, in the same group as [`Self::left`].
    pub fn right(&self, f0: &ModMap) -> Result<YonedaClass> {
        ext_precompose_with(&self.nu, f0, self.mu.group().resolution().clone())
    }
}

/// A 1-morphism: homology maps and a splitting of the composed complex.
#[derive(Clone)]
pub struct OneMorphism {
    pub src: Complex2,
    pub dst: Complex2,
    pub f0: ModMap,
    pub f1: ModMap,
    pub s: Splitting,
}

impl fmt::Debug for OneMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OneMorphism(f0={:?}, f1={:?}, {:?})", self.f0.matrix(), self.f1.matrix(), self.s)
    }
}

impl OneMorphism {
    pub fn new(src: &Complex2, dst: &Complex2, f0: ModMap, f1: ModMap, s: Splitting) -> Result<Self> {
        let c = composite(src, dst, &f0, &f1)?;
        if !is_splitting(c.complex(), &s) {
            return Err(Error::Precondition("not a splitting of the composed complex".into()));
        }
        Ok(OneMorphism { src: src.clone(), dst: dst.clone(), f0, f1, s })
    }

    pub fn composite(&self) -> Result<Composite> {
        composite(&self.src, &self.dst, &self.f0, &self.f1)
    }

    /// The identity 1-morphism, read off the identity zigzag.
    pub fn identity(m: &Complex2) -> Result<Self> {
        from_zigzag(&Zigzag::identity(m))
    }

    pub fn same_homology_maps(&self, other: &OneMorphism) -> bool {
        self.src == other.src && self.dst == other.dst && self.f0 == other.f0 && self.f1 == other.f1
    }

    /// Some 2-morphism `self => other`.
    pub fn two_morphism_to(&self, other: &OneMorphism) -> Option<TwoMorphism> {
        if !self.same_homology_maps(other) {
            return None;
        }
        find_morphism(&self.s, &other.s).map(|phi| TwoMorphism { src: self.clone(), dst: other.clone(), phi })
    }

    pub fn is_isomorphic(&self, other: &OneMorphism) -> bool {
        self.two_morphism_to(other).is_some()
    }
}

/// An isomorphism of splittings between 1-morphisms over the same `(f_0, f_1)`.
#[derive(Clone, Debug)]
pub struct TwoMorphism {
    pub src: OneMorphism,
    pub dst: OneMorphism,
    pub phi: ModMap,
}

impl TwoMorphism {
    pub fn new(src: &OneMorphism, dst: &OneMorphism, phi: ModMap) -> Result<Self> {
        if !src.same_homology_maps(dst) {
            return Err(Error::Mismatch("2-morphisms need equal (f0, f1)".into()));
        }
        if phi.after(&src.s.a) != dst.s.a || dst.s.b.after(&phi) != src.s.b || !phi.is_iso() {
            return Err(Error::IllDefinedMap("not an isomorphism of splittings".into()));
        }
        Ok(TwoMorphism { src: src.clone(), dst: dst.clone(), phi })
    }

    pub fn inverse(&self) -> Result<TwoMorphism> {
        TwoMorphism::new(&self.dst, &self.src, self.phi.inverse()?)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TwoMorphism) -> Result<TwoMorphism> {
        TwoMorphism::new(&self.src, &other.dst, other.phi.after(&self.phi))
    }
}

/// The fiber over `(f_0, f_1)`: the splitting groupoid of the composed complex.
pub fn hom_fiber(m: &Complex2, n: &Complex2, f0: &ModMap, f1: &ModMap, budget: Budget) -> Result<SplGroupoid> {
    let c = composite(m, n, f0, f1)?;
    enumerate_splittings(c.complex(), budget)
}

#[derive(Clone, Debug)]
pub struct Fiber {
    pub f0: ModMap,
    pub f1: ModMap,
    /// `None` when the fiber criterion rules the fiber out.
    pub groupoid: Option<SplGroupoid>,
}

impl Fiber {
    pub fn pi0(&self) -> usize {
        self.groupoid.as_ref().map_or(0, |g| g.pi0())
    }
}

/// All fibers over the pairs `(f_0, f_1)`, in enumeration order.
#[derive(Clone, Debug)]
pub struct HomCategory {
    pub src: Complex2,
    pub dst: Complex2,
    pub fibers: Vec<Fiber>,
}

impl HomCategory {
    pub fn pi0(&self) -> usize {
        self.fibers.iter().map(Fiber::pi0).sum()
    }

    pub fn nonempty(&self) -> Vec<&Fiber> {
        self.fibers.iter().filter(|f| f.pi0() > 0).collect()
    }

    /// Every component as a 1-morphism, fiber by fiber.
    pub fn morphisms(&self) -> Result<Vec<OneMorphism>> {
        let mut out = Vec::new();
        for fib in &self.fibers {
            if let Some(g) = &fib.groupoid {
                for s in g.reps() {
                    out.push(OneMorphism { src: self.src.clone(), dst: self.dst.clone(), f0: fib.f0.clone(), f1: fib.f1.clone(), s: s.clone() });
                }
            }
        }
        Ok(out)
    }

    /// Position of the component containing `f` among `morphisms()`.
    pub fn index_of(&self, f: &OneMorphism) -> Option<usize> {
        let mut off = 0;
        for fib in &self.fibers {
            if fib.f0 == f.f0 && fib.f1 == f.f1 {
                return fib.groupoid.as_ref()?.component_of(&f.s).map(|k| off + k);
            }
            off += fib.pi0();
        }
        None
    }
}

/// The groupoid of 1-morphisms `M -> N`, fibered over `Hom(H_0) x Hom(H_1)`.
/// The fiber criterion skips empty fibers; with `cross_check` set, skipped
/// fibers are enumerated anyway and must come out empty.
pub fn hom_category_with(m: &Complex2, n: &Complex2, budget: Budget, cross_check: bool) -> Result<HomCategory> {
    let h0s = enumerate_homs(m.h0(), n.h0(), budget)?;
    let h1s = enumerate_homs(m.h1(), n.h1(), budget)?;
    budget.check("homology map pairs", (h0s.len() * h1s.len()) as u128)?;
    let fam = FiberFamily::new(m, n)?;
    let lefts: Vec<YonedaClass> = h1s.iter().map(|f1| fam.left(f1)).collect::<Result<_>>()?;
    let mut fibers = Vec::new();
    for f0 in &h0s {
        let right = fam.right(f0)?;
        let pre = fam.pull(f0)?;
        for (f1, left) in h1s.iter().zip(&lefts) {
            let ok = left.equals(&right)?;
            let groupoid =
                if ok || cross_check { Some(enumerate_splittings(fam.composite(&pre, f1)?.complex(), budget)?) } else { None };
            if let Some(g) = &groupoid {
                if g.is_empty() == ok {
                    return Err(Error::Internal(format!(
                        "fiber criterion says {ok} but enumeration finds {} components over ({:?}, {:?})",
                        g.pi0(),
                        f0.matrix(),
                        f1.matrix()
                    )));
                }
            }
            fibers.push(Fiber { f0: f0.clone(), f1: f1.clone(), groupoid: groupoid.filter(|g| !g.is_empty()) });
        }
    }
    Ok(HomCategory { src: m.clone(), dst: n.clone(), fibers })
}

pub fn hom_category(m: &Complex2, n: &Complex2, budget: Budget) -> Result<HomCategory> {
    hom_category_with(m, n, budget, false)
}

/// Morphisms between two 1-morphisms over the same homology maps.
pub fn two_morphisms(f: &OneMorphism, g: &OneMorphism) -> Vec<TwoMorphism> {
    if !f.same_homology_maps(g) {
        return Vec::new();
    }
    MorphismSpace::new(&f.s, &g.s)
        .all()
        .into_iter()
        .map(|phi| TwoMorphism { src: f.clone(), dst: g.clone(), phi })
        .collect()
}
