//! Independent checks on the morphism groupoids: chain maps modulo homotopy,
//! and degree-0 cohomology of the total Hom complex out of a free
//! replacement.

use std::sync::Arc;

use super::Zigzag;
use crate::cx2::{ChainMap2, Complex2};
use crate::error::{Error, Result};
use crate::ext::{Resolution, DEFAULT_LENGTH};
use crate::zmod::{direct_sum, elements, quotient, HomSpace, LinearOp, ModMap, ZModule};

/// Cycles of a linear operator modulo given boundaries.
#[derive(Clone, Debug)]
struct Cohomology {
    op: LinearOp,
    incl: ModMap,
    proj: ModMap,
    group: ZModule,
}

impl Cohomology {
    fn new(op: LinearOp, boundaries: &[Vec<ModMap>]) -> Result<Self> {
        let (z, incl) = op.kernel();
        let sol = incl.solver();
        let gens = boundaries
            .iter()
            .map(|b| sol.preimage(&op.encode(b)).ok_or_else(|| Error::Internal("a boundary is not a cycle".into())))
            .collect::<Result<Vec<_>>>()?;
        let (group, proj) = quotient(&z, &gens);
        Ok(Cohomology { op, incl, proj, group })
    }

    fn class_of(&self, maps: &[ModMap]) -> Option<Vec<i64>> {
        self.incl.preimage(&self.op.encode(maps)).map(|z| self.proj.apply(&z))
    }

    fn representative(&self, e: &[i64]) -> Vec<ModMap> {
        let z = self.proj.preimage(e).expect("projection is surjective");
        self.op.decode(&self.incl.apply(&z))
    }
}

/// Chain maps `M -> N` modulo chain homotopy.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    src: Complex2,
    dst: Complex2,
    h: Cohomology,
}

impl HomotopyClasses {
    pub fn group(&self) -> &ZModule {
        &self.h.group
    }

    pub fn order(&self) -> u128 {
        self.h.group.order()
    }

    pub fn class_of(&self, phi: &ChainMap2) -> Result<Vec<i64>> {
        if phi.src() != &self.src || phi.dst() != &self.dst {
            return Err(Error::Mismatch("chain map between other complexes".into()));
        }
        self.h
            .class_of(&[phi.f1().clone(), phi.f0().clone()])
            .ok_or_else(|| Error::Internal("chain map is not a cycle".into()))
    }

    pub fn representative(&self, e: &[i64]) -> ChainMap2 {
        let r = self.h.representative(e);
        ChainMap2::new(&self.src, &self.dst, r[0].clone(), r[1].clone()).expect("cycles are chain maps")
    }

    /// One chain map per class, in the order of the class elements.
    pub fn representatives(&self) -> Vec<ChainMap2> {
        elements(&self.h.group).map(|e| self.representative(&e)).collect()
    }

    /// Every chain map `M -> N`.
    pub fn chain_maps(&self) -> Vec<ChainMap2> {
        let (z, _) = self.h.op.kernel();
        elements(&z)
            .map(|x| {
                let r = self.h.op.decode(&self.h.incl.apply(&x));
                ChainMap2::new(&self.src, &self.dst, r[0].clone(), r[1].clone()).expect("cycles are chain maps")
            })
            .collect()
    }
}

pub fn homotopy_classes(m: &Complex2, n: &Complex2) -> Result<HomotopyClasses> {
    let (dm, dn) = (m.d().clone(), n.d().clone());
    let op = LinearOp::new(
        vec![HomSpace::new(m.m1(), n.m1()), HomSpace::new(m.m0(), n.m0())],
        vec![HomSpace::new(m.m1(), n.m0())],
        move |p| vec![dn.after(&p[0]).minus(&p[1].after(&dm))],
    );
    let hs = HomSpace::new(m.m0(), n.m1());
    let bounds: Vec<Vec<ModMap>> = (0..hs.module().rank())
        .map(|g| {
            let h = hs.decode(&hs.module().basis(g));
            vec![h.after(m.d()), n.d().after(&h)]
        })
        .collect();
    Ok(HomotopyClasses { src: m.clone(), dst: n.clone(), h: Cohomology::new(op, &bounds)? })
}

/// `H^0 Hom(T, N)` for the total complex `T` of free resolutions of `M_0`
/// and `M_1` joined by a lift of `d`.
#[derive(Clone, Debug)]
pub struct DerivedHom {
    src: Complex2,
    dst: Complex2,
    /// `T_0`, `T_1`, `T_2`.
    t: [ZModule; 3],
    d1: ModMap,
    d2: ModMap,
    /// `T_0 -> M_0` and `T_1 -> M_1`.
    aug0: ModMap,
    aug1: ModMap,
    h: Cohomology,
}

impl DerivedHom {
    pub fn group(&self) -> &ZModule {
        &self.h.group
    }

    pub fn order(&self) -> u128 {
        self.h.group.order()
    }

    /// Class of a chain map `M -> N` pulled back to `T`.
    pub fn class_of(&self, phi: &ChainMap2) -> Result<Vec<i64>> {
        if phi.src() != &self.src || phi.dst() != &self.dst {
            return Err(Error::Mismatch("chain map between other complexes".into()));
        }
        self.h
            .class_of(&[phi.f0().after(&self.aug0), phi.f1().after(&self.aug1)])
            .ok_or_else(|| Error::Internal("pulled back chain map is not a cycle".into()))
    }

    /// Class of `f ∘ g^{-1}`: lift `T -> M` through the left leg, then apply `f`.
    pub fn class_of_zigzag(&self, z: &Zigzag) -> Result<Vec<i64>> {
        if z.src() != &self.src || z.dst() != &self.dst {
            return Err(Error::Mismatch("zigzag between other complexes".into()));
        }
        let w = &z.w;
        let (d1, d2, dw) = (self.d1.clone(), self.d2.clone(), w.d().clone());
        let (g1, g0) = (z.g.f1().clone(), z.g.f0().clone());
        let op = LinearOp::new(
            vec![HomSpace::new(&self.t[0], w.m0()), HomSpace::new(&self.t[1], w.m1())],
            vec![
                HomSpace::new(&self.t[1], w.m0()),
                HomSpace::new(&self.t[2], w.m1()),
                HomSpace::new(&self.t[0], self.src.m0()),
                HomSpace::new(&self.t[1], self.src.m1()),
            ],
            move |l| vec![dw.after(&l[1]).minus(&l[0].after(&d1)), l[1].after(&d2), g0.after(&l[0]), g1.after(&l[1])],
        );
        let rhs = [
            ModMap::zero(&self.t[1], w.m0()),
            ModMap::zero(&self.t[2], w.m1()),
            self.aug0.clone(),
            self.aug1.clone(),
        ];
        let l = op.solve(&rhs).ok_or_else(|| Error::Internal("free replacement does not lift through the left leg".into()))?;
        self.h
            .class_of(&[z.f.f0().after(&l[0]), z.f.f1().after(&l[1])])
            .ok_or_else(|| Error::Internal("lifted zigzag is not a cycle".into()))
    }

    /// Every class, in the order of the group elements.
    pub fn classes(&self) -> Vec<Vec<i64>> {
        elements(&self.h.group).collect()
    }
}

/// `y ∘ x` for `x` in `first = Hom(M, N)` and `y` in `second = Hom(N, P)`,
/// as a class of `target = Hom(M, P)`. All three must use the same kind of
/// resolution.
pub fn derived_compose(first: &DerivedHom, second: &DerivedHom, target: &DerivedHom, x: &[i64], y: &[i64]) -> Result<Vec<i64>> {
    if first.dst != second.src || target.src != first.src || target.dst != second.dst {
        return Err(Error::Mismatch("derived classes are not composable".into()));
    }
    let xr = first.h.representative(x);
    let yr = second.h.representative(y);
    // lift x: T_M -> N to T_M -> T_N over the augmentation of T_N
    let (a, b) = (first, second);
    let (ad1, ad2, bd1, bd2) = (a.d1.clone(), a.d2.clone(), b.d1.clone(), b.d2.clone());
    let (aug0, aug1) = (b.aug0.clone(), b.aug1.clone());
    let op = LinearOp::new(
        vec![HomSpace::new(&a.t[0], &b.t[0]), HomSpace::new(&a.t[1], &b.t[1]), HomSpace::new(&a.t[2], &b.t[2])],
        vec![
            HomSpace::new(&a.t[1], &b.t[0]),
            HomSpace::new(&a.t[2], &b.t[1]),
            HomSpace::new(&a.t[0], b.src.m0()),
            HomSpace::new(&a.t[1], b.src.m1()),
        ],
        move |l| {
            vec![
                bd1.after(&l[1]).minus(&l[0].after(&ad1)),
                bd2.after(&l[2]).minus(&l[1].after(&ad2)),
                aug0.after(&l[0]),
                aug1.after(&l[1]),
            ]
        },
    );
    let rhs = [ModMap::zero(&a.t[1], &b.t[0]), ModMap::zero(&a.t[2], &b.t[1]), xr[0].clone(), xr[1].clone()];
    let l = op.solve(&rhs).ok_or_else(|| Error::Internal("class does not lift to the free replacement".into()))?;
    target
        .h
        .class_of(&[yr[0].after(&l[0]), yr[1].after(&l[1])])
        .ok_or_else(|| Error::Internal("composite is not a cycle".into()))
}

/// Which free resolutions to use for the replacement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolutionKind {
    Periodic,
    KernelCover,
}

fn resolve(a: &ZModule, kind: ResolutionKind) -> Result<Resolution> {
    match kind {
        ResolutionKind::Periodic => Resolution::periodic(a, DEFAULT_LENGTH),
        ResolutionKind::KernelCover => Resolution::kernel_cover(a, DEFAULT_LENGTH),
    }
}

pub fn derived_hom_oracle(m: &Complex2, n: &Complex2) -> Result<DerivedHom> {
    derived_hom_with(m, n, ResolutionKind::Periodic)
}

pub fn derived_hom_with(m: &Complex2, n: &Complex2, kind: ResolutionKind) -> Result<DerivedHom> {
    let r0 = Arc::new(resolve(m.m0(), kind)?);
    let r1 = Arc::new(resolve(m.m1(), kind)?);
    let dt = r1.lift_map(m.d(), &r0, 2)?;
    // T_0 = F0_0, T_1 = F0_1 + F1_0, T_2 = F0_2 + F1_1
    let t0 = r0.module(0).clone();
    let s1 = direct_sum(&[r0.module(1), r1.module(0)]);
    let s2 = direct_sum(&[r0.module(2), r1.module(1)]);
    let d1 = r0.diff(1).after(&s1.proj[0]).plus(&dt[0].after(&s1.proj[1]));
    let d2 = s1.inj[0]
        .after(&r0.diff(2).after(&s2.proj[0]).plus(&dt[1].after(&s2.proj[1])))
        .minus(&s1.inj[1].after(&r1.diff(1).after(&s2.proj[1])));
    if !d1.after(&d2).is_zero() {
        return Err(Error::Internal("total differential does not square to zero".into()));
    }
    let dn = n.d().clone();
    let (e1, e2) = (d1.clone(), d2.clone());
    let op = LinearOp::new(
        vec![HomSpace::new(&t0, n.m0()), HomSpace::new(&s1.module, n.m1())],
        vec![HomSpace::new(&s1.module, n.m0()), HomSpace::new(&s2.module, n.m1())],
        move |p| vec![p[0].after(&e1).minus(&dn.after(&p[1])), p[1].after(&e2)],
    );
    let hs = HomSpace::new(&t0, n.m1());
    let bounds: Vec<Vec<ModMap>> = (0..hs.module().rank())
        .map(|g| {
            let h = hs.decode(&hs.module().basis(g));
            vec![n.d().after(&h), h.after(&d1)]
        })
        .collect();
    let aug0 = r0.augmentation().clone();
    let aug1 = r1.augmentation().after(&s1.proj[1]);
    let t = [t0, s1.module.clone(), s2.module.clone()];
    Ok(DerivedHom { src: m.clone(), dst: n.clone(), t, d1, d2, aug0, aug1, h: Cohomology::new(op, &bounds)? })
}
