//! Free resolutions, Ext groups in low degrees and Yoneda classes.

use std::fmt;
use std::sync::Arc;

use crate::cx2::Complex2;
use crate::error::{Error, Result};
use crate::zmod::{quotient, HomSpace, LinearOp, Mat, ModMap, Preimages, ZModule};

pub const DEFAULT_LENGTH: usize = 4;

/// `... -> P_1 -> P_0 -> A -> 0` with free `P_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    target: ZModule,
    modules: Vec<ZModule>,
    /// `diffs[k]: P_k -> P_{k-1}` for `k >= 1`; `diffs[0]` is the augmentation.
    diffs: Vec<ModMap>,
}

impl Resolution {
    /// Direct sum of the periodic resolutions `Z/m <-a- Z/m <-(m/a)- Z/m <-a- ...` of the factors.
    pub fn periodic(a: &ZModule, length: usize) -> Result<Self> {
        if length < 2 {
            return Err(Error::Precondition("resolution length must be at least 2".into()));
        }
        let m = a.modulus();
        let ring = a.ring();
        let torsion: Vec<i64> = a.factors().iter().copied().filter(|&d| d < m).collect();
        let mut modules = vec![ring.free(a.rank())];
        for _ in 1..=length {
            modules.push(ring.free(torsion.len()));
        }
        let mut eps = Mat::zeros(a.rank(), a.rank());
        for i in 0..a.rank() {
            eps.set(i, i, 1);
        }
        let mut diffs = vec![ModMap::from_mat(&modules[0], a, eps)?];
        // torsion factors come first in the sorted factor list
        for k in 1..=length {
            let mut mat = Mat::zeros(modules[k - 1].rank(), modules[k].rank());
            for (i, &d) in torsion.iter().enumerate() {
                mat.set(i, i, if k % 2 == 1 { d } else { m / d });
            }
            diffs.push(ModMap::from_mat(&modules[k], &modules[k - 1], mat)?);
        }
        let r = Resolution { target: a.clone(), modules, diffs };
        r.verify()?;
        Ok(r)
    }

    /// Resolution obtained by repeatedly covering kernels by free modules.
    pub fn kernel_cover(a: &ZModule, length: usize) -> Result<Self> {
        let ring = a.ring();
        // cover A by one extra generator as well, so the result differs from the periodic one
        let mut gens: Vec<Vec<i64>> = (0..a.rank()).map(|i| a.basis(i)).collect();
        if a.rank() > 0 {
            gens.push(a.reduce(&vec![1; a.rank()]));
        }
        let p0 = ring.free(gens.len());
        let eps = ModMap::from_images(&p0, a, &gens)?;
        let mut modules = vec![p0];
        let mut diffs = vec![eps];
        for k in 1..=length {
            let (ker, incl) = diffs[k - 1].kernel();
            let pk = ring.free(ker.rank());
            let cover = ModMap::from_images(&pk, &ker, &(0..ker.rank()).map(|i| ker.basis(i)).collect::<Vec<_>>())?;
            diffs.push(incl.after(&cover));
            modules.push(pk);
        }
        let r = Resolution { target: a.clone(), modules, diffs };
        r.verify()?;
        Ok(r)
    }

    fn verify(&self) -> Result<()> {
        if !self.diffs[0].is_surjective() {
            return Err(Error::Internal("augmentation is not surjective".into()));
        }
        for k in 1..self.diffs.len() {
            let prev = &self.diffs[k - 1];
            if !prev.after(&self.diffs[k]).is_zero() {
                return Err(Error::Internal(format!("resolution differential squares to non-zero at {k}")));
            }
            let ker = prev.src().order() / prev.image_order();
            if ker != self.diffs[k].image_order() {
                return Err(Error::Internal(format!("resolution not exact at {}", k - 1)));
            }
        }
        Ok(())
    }

    pub fn target(&self) -> &ZModule {
        &self.target
    }

    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, k: usize) -> &ZModule {
        &self.modules[k]
    }

    /// `∂_k: P_k -> P_{k-1}`.
    pub fn diff(&self, k: usize) -> &ModMap {
        assert!(k >= 1, "use augmentation() for degree 0");
        &self.diffs[k]
    }

    pub fn augmentation(&self) -> &ModMap {
        &self.diffs[0]
    }

    /// Lift `f: self.target -> other.target` to a chain map `P_k -> P'_k`, `k <= top`.
    pub fn lift_map(&self, f: &ModMap, other: &Resolution, top: usize) -> Result<Vec<ModMap>> {
        if f.src() != &self.target || f.dst() != &other.target {
            return Err(Error::Mismatch("map does not connect the resolved modules".into()));
        }
        let mut out: Vec<ModMap> = Vec::new();
        for k in 0..=top.min(self.length()).min(other.length()) {
            let (want, through) = if k == 0 {
                (f.after(self.augmentation()), other.augmentation())
            } else {
                (out[k - 1].after(self.diff(k)), other.diff(k))
            };
            out.push(lift_free(&want, through)?);
        }
        Ok(out)
    }
}

/// For free source: `h` with `through ∘ h = want`, if the image condition holds.
pub(crate) fn lift_free(want: &ModMap, through: &ModMap) -> Result<ModMap> {
    let sol = through.solver();
    lift_free_with(want, through.src(), &sol)
}

pub(crate) fn lift_free_with(want: &ModMap, mid: &ZModule, sol: &Preimages) -> Result<ModMap> {
    let imgs = (0..want.src().rank())
        .map(|j| {
            sol.preimage(&want.image_of_gen(j))
                .ok_or_else(|| Error::Internal("lift does not exist: image condition fails".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    ModMap::from_images(want.src(), mid, &imgs)
}

/// `Ext^i(A, B)` as cocycles `P_i -> B` modulo coboundaries.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    degree: usize,
    res: Arc<Resolution>,
    coeff: ZModule,
    space: HomSpace,
    cocycles: ModMap,
    proj: ModMap,
    module: ZModule,
}

impl ExtGroup {
    pub fn new(res: Arc<Resolution>, b: &ZModule, degree: usize) -> Result<Self> {
        if degree + 1 > res.length() {
            return Err(Error::Precondition("resolution too short for this degree".into()));
        }
        let space = HomSpace::new(res.module(degree), b);
        let next = HomSpace::new(res.module(degree + 1), b);
        let dn = res.diff(degree + 1).clone();
        let delta = LinearOp::new(vec![space.clone()], vec![next], move |f| vec![f[0].after(&dn)]);
        let (z, cocycles) = delta.kernel();
        let mut bgens = Vec::new();
        if degree > 0 {
            let prev = HomSpace::new(res.module(degree - 1), b);
            let sol = cocycles.solver();
            let dp = res.diff(degree);
            for g in 0..prev.module().rank() {
                let cob = prev.decode(&prev.module().basis(g)).after(dp);
                bgens.push(sol.preimage(&space.encode(&cob)).expect("coboundaries are cocycles"));
            }
        }
        let (module, proj) = quotient(&z, &bgens);
        Ok(ExtGroup { degree, res, coeff: b.clone(), space, cocycles, proj, module })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &ZModule {
        &self.module
    }

    pub fn order(&self) -> u128 {
        self.module.order()
    }

    pub fn resolution(&self) -> &Arc<Resolution> {
        &self.res
    }

    pub fn source(&self) -> &ZModule {
        self.res.target()
    }

    pub fn coefficients(&self) -> &ZModule {
        &self.coeff
    }

    /// Class of a cocycle `P_i -> B`.
    pub fn class_of(&self, phi: &ModMap) -> Result<Vec<i64>> {
        let z = self
            .cocycles
            .preimage(&self.space.encode(phi))
            .ok_or_else(|| Error::Precondition("not a cocycle".into()))?;
        Ok(self.proj.apply(&z))
    }

    /// A cocycle representing a class.
    pub fn representative(&self, e: &[i64]) -> ModMap {
        let z = self.proj.preimage(e).expect("projection is surjective");
        self.space.decode(&self.cocycles.apply(&z))
    }
}

pub fn free_resolution(a: &ZModule, length: usize) -> Result<Resolution> {
    Resolution::periodic(a, length)
}

/// `Ext^i(A, B)` via the periodic resolution, `i <= 2`.
pub fn ext_group(a: &ZModule, b: &ZModule, i: usize) -> Result<ExtGroup> {
    if i > 2 {
        return Err(Error::Precondition("only degrees 0, 1, 2 are supported".into()));
    }
    ExtGroup::new(Arc::new(free_resolution(a, DEFAULT_LENGTH)?), b, i)
}

/// An element of `Ext^2(H_0, H_1)`.
#[derive(Clone)]
pub struct YonedaClass {
    group: Arc<ExtGroup>,
    elem: Vec<i64>,
}

impl fmt::Debug for YonedaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in Ext2({:?}, {:?}) = {:?}", self.elem, self.group.source(), self.group.coeff, self.group.module)
    }
}

impl YonedaClass {
    pub fn new(group: Arc<ExtGroup>, elem: Vec<i64>) -> Self {
        let elem = group.module().reduce(&elem);
        YonedaClass { group, elem }
    }

    pub fn group(&self) -> &Arc<ExtGroup> {
        &self.group
    }

    pub fn element(&self) -> &[i64] {
        &self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.iter().all(|&x| x == 0)
    }

    pub fn cocycle(&self) -> ModMap {
        self.group.representative(&self.elem)
    }

    fn same_group(&self, other: &YonedaClass) -> bool {
        self.group.source() == other.group.source()
            && self.group.coeff == other.group.coeff
            && Arc::ptr_eq(&self.group.res, &other.group.res)
    }

    pub fn minus(&self, other: &YonedaClass) -> Result<YonedaClass> {
        if !self.same_group(other) {
            return Err(Error::Mismatch("classes live in different Ext groups".into()));
        }
        let e = self.group.module.add(&self.elem, &self.group.module.neg(&other.elem));
        Ok(YonedaClass::new(self.group.clone(), e))
    }

    pub fn equals(&self, other: &YonedaClass) -> Result<bool> {
        Ok(self.minus(other)?.is_zero())
    }
}

/// The class of `0 -> H_1 -> M_1 -> M_0 -> H_0 -> 0`, lifted along the periodic resolution of `H_0`.
pub fn yoneda_class(m: &Complex2) -> Result<YonedaClass> {
    yoneda_class_with(m, Arc::new(free_resolution(m.h0(), DEFAULT_LENGTH)?))
}

pub fn yoneda_class_with(m: &Complex2, res: Arc<Resolution>) -> Result<YonedaClass> {
    if res.target() != m.h0() {
        return Err(Error::Mismatch("resolution does not resolve H0".into()));
    }
    let [_, _, phi2] = lift_four_term(m, &res)?;
    let group = Arc::new(ExtGroup::new(res, m.h1(), 2)?);
    let e = group.class_of(&phi2)?;
    Ok(YonedaClass::new(group, e))
}

/// `φ_0: P_0 -> M_0`, `φ_1: P_1 -> M_1`, `φ_2: P_2 -> H_1` over the identity of `H_0`.
pub(crate) fn lift_four_term(m: &Complex2, res: &Resolution) -> Result<[ModMap; 3]> {
    let phi0 = lift_free(res.augmentation(), m.pi())?;
    let phi1 = lift_free(&phi0.after(res.diff(1)), m.d())?;
    let phi2 = lift_free(&phi1.after(res.diff(2)), m.iota())?;
    Ok([phi0, phi1, phi2])
}

/// `f_1 ∘ c` for `f_1: H_1 -> N`.
pub fn ext_postcompose(f1: &ModMap, c: &YonedaClass) -> Result<YonedaClass> {
    if f1.src() != c.group.coefficients() {
        return Err(Error::Mismatch("map does not start at the class target".into()));
    }
    let group = Arc::new(ExtGroup::new(c.group.res.clone(), f1.dst(), 2)?);
    let e = group.class_of(&f1.after(&c.cocycle()))?;
    Ok(YonedaClass::new(group, e))
}

/// `c ∘ f_0` for `f_0: N -> H_0`, resolved by `res`.
pub fn ext_precompose_with(c: &YonedaClass, f0: &ModMap, res: Arc<Resolution>) -> Result<YonedaClass> {
    if f0.dst() != c.group.source() || res.target() != f0.src() {
        return Err(Error::Mismatch("map does not end at the class source".into()));
    }
    let psi = res.lift_map(f0, &c.group.res, 2)?;
    let group = Arc::new(ExtGroup::new(res, c.group.coefficients(), 2)?);
    let e = group.class_of(&c.cocycle().after(&psi[2]))?;
    Ok(YonedaClass::new(group, e))
}

pub fn ext_precompose(c: &YonedaClass, f0: &ModMap) -> Result<YonedaClass> {
    ext_precompose_with(c, f0, Arc::new(free_resolution(f0.src(), DEFAULT_LENGTH)?))
}

/// Re-express a class over another resolution of the same module.
pub fn transport(c: &YonedaClass, res: Arc<Resolution>) -> Result<YonedaClass> {
    ext_precompose_with(c, &ModMap::identity(c.group.source()), res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::{enumerate_homs, modules_up_to, Budget};

    fn z(m: i64, f: &[i64]) -> ZModule {
        ZModule::new(m, f.to_vec()).unwrap()
    }

    #[test]
    fn ext_examples() {
        let z2 = z(4, &[2]);
        let z4 = z(4, &[4]);
        assert_eq!(ext_group(&z2, &z2, 1).unwrap().module().factors(), &[2]);
        assert_eq!(ext_group(&z2, &z2, 2).unwrap().module().factors(), &[2]);
        assert!(ext_group(&z4, &z2, 1).unwrap().module().is_zero());
        assert!(ext_group(&z4, &z2, 2).unwrap().module().is_zero());
        let r = free_resolution(&z4, 4).unwrap();
        assert!(r.module(1).is_zero());
        let r = free_resolution(&z(4, &[2, 4]), 4).unwrap();
        assert_eq!(r.module(0).rank(), 2);
        assert_eq!(r.module(3).rank(), 1);
    }

    #[test]
    fn ext_zero_is_hom() {
        for m in [4, 6, 12] {
            let mods = modules_up_to(m, 12);
            for a in &mods {
                for b in &mods {
                    let e = ext_group(a, b, 0).unwrap();
                    let n = enumerate_homs(a, b, Budget::default()).unwrap().len() as u128;
                    assert_eq!(e.order(), n);
                }
            }
        }
    }

    #[test]
    fn resolution_independence() {
        for m in [4, 8, 12] {
            for a in modules_up_to(m, 16) {
                let p = Arc::new(Resolution::periodic(&a, 4).unwrap());
                let k = Arc::new(Resolution::kernel_cover(&a, 4).unwrap());
                for b in modules_up_to(m, 8) {
                    for i in 0..3 {
                        let e1 = ExtGroup::new(p.clone(), &b, i).unwrap();
                        let e2 = ExtGroup::new(k.clone(), &b, i).unwrap();
                        assert_eq!(e1.module(), e2.module(), "Ext^{i}({a:?}, {b:?})");
                    }
                }
            }
        }
    }

    #[test]
    fn yoneda_examples() {
        let z2 = z(4, &[2]);
        let z4 = z(4, &[4]);
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        let c = yoneda_class(&m).unwrap();
        assert!(!c.is_zero());
        assert!(yoneda_class(&Complex2::zero_differential(&z2, &z2)).unwrap().is_zero());
        assert!(yoneda_class(&Complex2::identity_on(&z4)).unwrap().is_zero());
        assert!(ext_postcompose(&ModMap::zero(&z2, &z2), &c).unwrap().is_zero());
        let same = ext_precompose(&c, &ModMap::identity(&z2)).unwrap();
        assert!(!same.is_zero());
        let k = Arc::new(Resolution::kernel_cover(&z2, 4).unwrap());
        let direct = yoneda_class_with(&m, k.clone()).unwrap();
        assert!(transport(&c, k).unwrap().equals(&direct).unwrap());
    }
}
