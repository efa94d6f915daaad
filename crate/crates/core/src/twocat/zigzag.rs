//! Zigzags `M <-g- W -f-> N` and their translation to and from splittings.

use super::{composite, Composite, OneMorphism};
use crate::adm::{alpha_star, beta_shriek, glue, morphism_functor_to, AdmFunctor, DEFAULT_D_MAX};
use crate::cx2::{complex_pullback, ChainMap2, Complex2};
use crate::error::{Error, Result};
use crate::simplex::MonotoneMap;
use crate::spl::{enumerate_splittings, is_splitting, Splitting};
use crate::zmod::{direct_sum2, factor_through_injection, factor_through_surjection, quotient, Budget, HomSpace, LinearOp, ModMap};

/// A span whose left leg is a termwise-surjective quasi-isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zigzag {
    pub w: Complex2,
    pub g: ChainMap2,
    pub f: ChainMap2,
}

impl Zigzag {
    pub fn new(g: ChainMap2, f: ChainMap2) -> Result<Self> {
        if g.src() != f.src() {
            return Err(Error::Mismatch("zigzag legs have different sources".into()));
        }
        if !g.is_quasi_iso() {
            return Err(Error::NotQuasiIso("left leg of a zigzag".into()));
        }
        if !g.is_termwise_surjective() {
            return Err(Error::Precondition("left leg of a zigzag is not termwise surjective".into()));
        }
        Ok(Zigzag { w: g.src().clone(), g, f })
    }

    pub fn identity(m: &Complex2) -> Self {
        let id = ChainMap2::identity(m);
        Zigzag { w: m.clone(), g: id.clone(), f: id }
    }

    pub fn src(&self) -> &Complex2 {
        self.g.dst()
    }

    pub fn dst(&self) -> &Complex2 {
        self.f.dst()
    }

    /// `(H_0(f) H_0(g)^{-1}, H_1(f) H_1(g)^{-1})`.
    pub fn homology_maps(&self) -> Result<(ModMap, ModMap)> {
        let f0 = self.f.h0().after(&self.g.h0().inverse()?);
        let f1 = self.f.h1().after(&self.g.h1().inverse()?);
        Ok((f0, f1))
    }

    /// A map of zigzags `W -> W'` commuting with both legs, if one exists.
    pub fn map_to(&self, other: &Zigzag) -> Option<ChainMap2> {
        if self.src() != other.src() || self.dst() != other.dst() {
            return None;
        }
        let (w, v) = (&self.w, &other.w);
        let unknowns = vec![HomSpace::new(w.m1(), v.m1()), HomSpace::new(w.m0(), v.m0())];
        let targets = vec![
            HomSpace::new(w.m1(), v.m0()),
            HomSpace::new(w.m1(), self.src().m1()),
            HomSpace::new(w.m0(), self.src().m0()),
            HomSpace::new(w.m1(), self.dst().m1()),
            HomSpace::new(w.m0(), self.dst().m0()),
        ];
        let (dw, dv) = (w.d().clone(), v.d().clone());
        let (g, f) = (other.g.clone(), other.f.clone());
        let op = LinearOp::new(unknowns, targets, move |h| {
            vec![
                dv.after(&h[0]).minus(&h[1].after(&dw)),
                g.f1().after(&h[0]),
                g.f0().after(&h[1]),
                f.f1().after(&h[0]),
                f.f0().after(&h[1]),
            ]
        });
        let rhs = [
            ModMap::zero(w.m1(), v.m0()),
            self.g.f1().clone(),
            self.g.f0().clone(),
            self.f.f1().clone(),
            self.f.f0().clone(),
        ];
        let h = op.solve(&rhs)?;
        ChainMap2::new(w, v, h[0].clone(), h[1].clone()).ok()
    }
}

/// The zigzag `(M, id, φ)` of a chain map.
pub fn zigzag_of_chain_map(phi: &ChainMap2) -> Zigzag {
    Zigzag { w: phi.src().clone(), g: ChainMap2::identity(phi.src()), f: phi.clone() }
}

/// `M <- [M_1 + N_1 -> M~] -> N` with legs induced by the projections.
pub fn to_zigzag(fm: &OneMorphism) -> Result<Zigzag> {
    let c = fm.composite()?;
    let (m, n) = (&fm.src, &fm.dst);
    let s = &fm.s;
    let w = Complex2::new(s.a.after(c.quotient()));
    let (pm, pn) = (&c.sum.proj[0], &c.sum.proj[1]);
    let to_s0 = c.to_sum0().after(&s.b);
    let g = ChainMap2::new(&w, m, pm.f1().clone(), pm.f0().after(&to_s0))?;
    let f = ChainMap2::new(&w, n, pn.f1().neg(), pn.f0().after(&to_s0).neg())?;
    if !g.is_quasi_iso() || !g.is_termwise_surjective() {
        return Err(Error::Internal("left leg of to_zigzag is not a surjective quasi-isomorphism".into()));
    }
    let z = Zigzag { w, g, f };
    if z.homology_maps()? != (fm.f0.clone(), fm.f1.clone()) {
        return Err(Error::Internal("to_zigzag does not induce (f0, f1) on homology".into()));
    }
    Ok(z)
}

/// The splitting of `P(M, N, f_0, f_1)` read off a zigzag: push `P_1` out
/// along `W_1 -> P_1` and `d_W`.
fn splitting_of(z: &Zigzag, c: &Composite) -> Result<Splitting> {
    let (m, w) = (z.src(), &z.w);
    let s = &c.sum;
    let kappa = s.inj[0].after(&z.g).minus(&s.inj[1].after(&z.f));
    let h0m = m.h0();
    let sum0 = direct_sum2(s.complex.m0(), h0m);
    let to_q0 = factor_through_injection(
        &kappa.f0().pair(&m.pi().after(z.g.f0()), &sum0),
        &c.to_sum0().pair(&c.pre.to_n, &sum0),
    )?;
    let p = c.complex();
    let qk1 = c.quotient().after(kappa.f1());
    let sum = direct_sum2(p.m1(), w.m0());
    let rel = sum.inj[0].after(&qk1).minus(&sum.inj[1].after(w.d()));
    let gens: Vec<Vec<i64>> = (0..w.m1().rank()).map(|j| rel.image_of_gen(j)).collect();
    let (_, pr) = quotient(&sum.module, &gens);
    let a = pr.after(&sum.inj[0]);
    let b = factor_through_surjection(&p.d().copair(&to_q0, &sum), &pr)?;
    Ok(Splitting::new(a, b))
}

/// The 1-morphism of a zigzag, as the canonical representative of its
/// component in the fiber.
pub fn from_zigzag_with(z: &Zigzag, budget: Budget) -> Result<OneMorphism> {
    let (f0, f1) = z.homology_maps()?;
    let c = composite(z.src(), z.dst(), &f0, &f1)?;
    let s = splitting_of(z, &c)?;
    if !is_splitting(c.complex(), &s) {
        return Err(Error::NoMatchingSplitting("the pushout is not a splitting".into()));
    }
    let fiber = enumerate_splittings(c.complex(), budget)?;
    let k = fiber
        .component_of(&s)
        .ok_or_else(|| Error::NoMatchingSplitting("no component of the fiber contains the pushout".into()))?;
    let rep = fiber.components()[k].rep.clone();
    Ok(OneMorphism { src: z.src().clone(), dst: z.dst().clone(), f0, f1, s: rep })
}

pub fn from_zigzag(z: &Zigzag) -> Result<OneMorphism> {
    from_zigzag_with(z, Budget::from_env())
}

/// `M <- W_1 x_N W_2 -> P`.
pub fn compose_zigzag(z1: &Zigzag, z2: &Zigzag) -> Result<Zigzag> {
    if z1.dst() != z2.src() {
        return Err(Error::Mismatch("zigzags are not composable".into()));
    }
    let pb = complex_pullback(&z1.f, &z2.g)?;
    if !pb.pa.is_quasi_iso() || !pb.pa.is_termwise_surjective() {
        return Err(Error::Internal("pullback of a surjective quasi-isomorphism is not one".into()));
    }
    Zigzag::new(z1.g.after(&pb.pa), z2.f.after(&pb.pb))
}

fn check_composable(f: &OneMorphism, g: &OneMorphism) -> Result<()> {
    if f.dst != g.src {
        return Err(Error::Mismatch("1-morphisms are not composable".into()));
    }
    Ok(())
}

/// `g ∘ f` through zigzags.
pub fn compose(f: &OneMorphism, g: &OneMorphism) -> Result<OneMorphism> {
    check_composable(f, g)?;
    from_zigzag(&compose_zigzag(&to_zigzag(f)?, &to_zigzag(g)?)?)
}

/// The functor over `Δ[2]` extending the glued pair `(f, g)` by `β_! α_*`.
pub fn kan_functor(f: &OneMorphism, g: &OneMorphism) -> Result<AdmFunctor> {
    kan_functor_to(f, g, DEFAULT_D_MAX)
}

/// As `kan_functor`, with the glued pair built up to dimension `d_max`. The
/// result is defined up to `d_max - 2`.
pub fn kan_functor_to(f: &OneMorphism, g: &OneMorphism, d_max: usize) -> Result<AdmFunctor> {
    check_composable(f, g)?;
    let (zf, zg) = (to_zigzag(f)?, to_zigzag(g)?);
    let phi = morphism_functor_to(&zf.g, &zf.f, d_max)?;
    let psi = morphism_functor_to(&zg.g, &zg.f, d_max)?;
    beta_shriek(&alpha_star(&glue(&phi, &psi)?)?)
}

/// `g ∘ f` through the Kan extension: restrict to the long edge `02` and
/// read the zigzag off its vertex maps.
pub fn compose_kan(f: &OneMorphism, g: &OneMorphism) -> Result<OneMorphism> {
    let k = kan_functor(f, g)?;
    let long = MonotoneMap::of(vec![0, 2], 2);
    let z = Zigzag::new(k.vertex_map(&long, 0)?, k.vertex_map(&long, 1)?)?;
    if z.src() != &f.src || z.dst() != &g.dst {
        return Err(Error::Internal("long edge does not end at the outer objects".into()));
    }
    from_zigzag(&z)
}
