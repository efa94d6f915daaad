use std::fmt;

use super::linalg::{gcd, md, snf, Mat, Snf};
use super::module::{present, ZModule};
use crate::error::{Error, Result};

/// A homomorphism of finite Z/m-modules, stored as the matrix of generator
/// images (column j is the image of the j-th source generator).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMap {
    src: ZModule,
    dst: ZModule,
    mat: Mat,
}

impl fmt::Debug for ModMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -{:?}-> {:?}", self.src, self.mat, self.dst)
    }
}

impl ModMap {
    /// Map from a row-major matrix (rows index target generators).
    pub fn new(src: &ZModule, dst: &ZModule, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.len() != dst.rank() || rows.iter().any(|r| r.len() != src.rank()) {
            return Err(Error::IllDefinedMap(format!(
                "matrix shape does not match {src:?} -> {dst:?}"
            )));
        }
        Self::from_mat(src, dst, Mat::from_row_vecs(rows, src.rank()))
    }

    pub fn from_mat(src: &ZModule, dst: &ZModule, mut mat: Mat) -> Result<Self> {
        if src.modulus() != dst.modulus() {
            return Err(Error::Mismatch("maps between modules over different rings".into()));
        }
        mat.reduce_rows(dst.factors());
        for (j, &a) in src.factors().iter().enumerate() {
            for (i, &b) in dst.factors().iter().enumerate() {
                if (mat.get(i, j) as i128 * a as i128) % b as i128 != 0 {
                    return Err(Error::IllDefinedMap(format!(
                        "entry ({i},{j}) = {} is not killed by the source order {a} in Z/{b}",
                        mat.get(i, j)
                    )));
                }
            }
        }
        Ok(ModMap { src: src.clone(), dst: dst.clone(), mat })
    }

    pub(crate) fn from_mat_unchecked(src: &ZModule, dst: &ZModule, mut mat: Mat) -> Self {
        mat.reduce_rows(dst.factors());
        debug_assert!(Self::from_mat(src, dst, mat.clone()).is_ok(), "ill-defined {mat:?}");
        ModMap { src: src.clone(), dst: dst.clone(), mat }
    }

    /// Map determined by the images of the source generators.
    pub fn from_images(src: &ZModule, dst: &ZModule, images: &[Vec<i64>]) -> Result<Self> {
        if images.len() != src.rank() || images.iter().any(|c| c.len() != dst.rank()) {
            return Err(Error::IllDefinedMap("wrong number or length of generator images".into()));
        }
        Self::from_mat(src, dst, Mat::from_cols(dst.rank(), images))
    }

    pub fn zero(src: &ZModule, dst: &ZModule) -> Self {
        ModMap { src: src.clone(), dst: dst.clone(), mat: Mat::zeros(dst.rank(), src.rank()) }
    }

    pub fn identity(a: &ZModule) -> Self {
        ModMap { src: a.clone(), dst: a.clone(), mat: Mat::identity(a.rank()) }
    }

    /// Multiplication by a scalar.
    pub fn scalar(a: &ZModule, s: i64) -> Self {
        Self::from_mat_unchecked(a, a, Mat::identity(a.rank()).scale(md(s, a.modulus()), a.modulus()))
    }

    pub fn src(&self) -> &ZModule {
        &self.src
    }

    pub fn dst(&self) -> &ZModule {
        &self.dst
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.mat.to_row_vecs()
    }

    pub(crate) fn m(&self) -> i64 {
        self.src.modulus()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let y = self.mat.mul_vec(x, self.m());
        self.dst.reduce(&y)
    }

    pub fn image_of_gen(&self, j: usize) -> Vec<i64> {
        self.mat.col(j)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModMap) -> Result<ModMap> {
        if first.dst != self.src {
            return Err(Error::Mismatch(format!(
                "cannot compose {:?} after {:?}",
                self.src, first.dst
            )));
        }
        Ok(self.after(first))
    }

    /// `self ∘ first`, panicking on mismatch (internal use).
    pub(crate) fn after(&self, first: &ModMap) -> ModMap {
        assert_eq!(first.dst, self.src, "composition mismatch");
        let mat = self.mat.mul(&first.mat, self.m());
        ModMap::from_mat_unchecked(&first.src, &self.dst, mat)
    }

    pub fn add(&self, other: &ModMap) -> Result<ModMap> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::Mismatch("sum of maps with different (co)domains".into()));
        }
        Ok(self.plus(other))
    }

    pub(crate) fn plus(&self, other: &ModMap) -> ModMap {
        assert!(self.src == other.src && self.dst == other.dst, "sum mismatch");
        ModMap::from_mat_unchecked(&self.src, &self.dst, self.mat.add(&other.mat, self.m()))
    }

    pub fn neg(&self) -> ModMap {
        ModMap::from_mat_unchecked(&self.src, &self.dst, self.mat.scale(-1, self.m()))
    }

    pub fn minus(&self, other: &ModMap) -> ModMap {
        self.plus(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// Augmented matrix `[F | diag(dst)]` whose column span is the preimage
    /// lattice of the map in free coordinates.
    fn augmented(&self) -> Mat {
        self.mat.hstack(&self.dst.relations())
    }

    /// Solver for repeated preimage queries.
    pub fn solver(&self) -> Preimages {
        Preimages { snf: snf(&self.augmented(), self.m()), map: self.clone() }
    }

    /// Some `x` with `self(x) = y`, if `y` lies in the image.
    pub fn preimage(&self, y: &[i64]) -> Option<Vec<i64>> {
        self.solver().preimage(y)
    }

    /// Order of the image.
    pub fn image_order(&self) -> u128 {
        let s = snf(&self.augmented(), self.m());
        let rel: u128 = self.dst.factors().iter().map(|&d| (self.m() / d) as u128).product();
        s.image_order() / rel
    }

    pub fn is_injective(&self) -> bool {
        self.image_order() == self.src.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.dst.order()
    }

    pub fn is_iso(&self) -> bool {
        self.src.order() == self.dst.order() && self.is_surjective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<ModMap> {
        if !self.is_iso() {
            return Err(Error::Precondition("inverse of a non-isomorphism".into()));
        }
        let sol = self.solver();
        let imgs: Vec<Vec<i64>> = (0..self.dst.rank())
            .map(|i| sol.preimage(&self.dst.basis(i)).expect("iso is surjective"))
            .collect();
        ModMap::from_images(&self.dst, &self.src, &imgs)
    }

    /// Kernel with its inclusion.
    pub fn kernel(&self) -> (ZModule, ModMap) {
        let aug = self.augmented();
        let s = snf(&aug, self.m());
        let k = s.kernel_gens();
        let ka = self.src.rank();
        let gens: Vec<Vec<i64>> = (0..k.cols())
            .map(|j| self.src.reduce(&k.col(j)[..ka]))
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        submodule(&self.src, &gens)
    }

    /// Image with the factorization `self = incl ∘ surj`.
    pub fn image(&self) -> (ZModule, ModMap, ModMap) {
        let gens: Vec<Vec<i64>> = (0..self.src.rank()).map(|j| self.mat.col(j)).collect();
        let (im, incl) = submodule(&self.dst, &gens);
        let sol = incl.solver();
        let imgs: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| sol.preimage(g).expect("generator image lies in the image"))
            .collect();
        let surj = ModMap::from_images(&self.src, &im, &imgs).expect("factorization is well defined");
        (im, surj, incl)
    }

    /// Cokernel with its projection.
    pub fn cokernel(&self) -> (ZModule, ModMap) {
        let gens: Vec<Vec<i64>> = (0..self.src.rank()).map(|j| self.mat.col(j)).collect();
        quotient(&self.dst, &gens)
    }

    /// Matrix with rows from `self` then `other` (the map `x -> (f x, g x)`).
    pub fn pair(&self, other: &ModMap, sum: &DirectSum) -> ModMap {
        assert_eq!(self.src, other.src);
        sum.inj[0].after(self).plus(&sum.inj[1].after(other))
    }

    /// `(x, y) -> f x + g y`.
    pub fn copair(&self, other: &ModMap, sum: &DirectSum) -> ModMap {
        assert_eq!(self.dst, other.dst);
        self.after(&sum.proj[0]).plus(&other.after(&sum.proj[1]))
    }
}

/// The map `h` with `h ∘ q = f`, for `q` surjective and `f` killing `ker q`.
pub fn factor_through_surjection(f: &ModMap, q: &ModMap) -> Result<ModMap> {
    if f.src != q.src {
        return Err(Error::Mismatch("factorization through a map with another source".into()));
    }
    let sol = q.solver();
    let imgs = (0..q.dst.rank())
        .map(|j| {
            sol.preimage(&q.dst.basis(j))
                .map(|x| f.apply(&x))
                .ok_or_else(|| Error::Precondition("map is not surjective".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let h = ModMap::from_images(&q.dst, &f.dst, &imgs)?;
    if h.after(q) != *f {
        return Err(Error::Precondition("map does not kill the kernel".into()));
    }
    Ok(h)
}

/// The map `h` with `i ∘ h = f`, for `i` injective and `im f ⊆ im i`.
pub fn factor_through_injection(f: &ModMap, i: &ModMap) -> Result<ModMap> {
    if f.dst != i.dst {
        return Err(Error::Mismatch("factorization through a map with another target".into()));
    }
    let sol = i.solver();
    let imgs = (0..f.src.rank())
        .map(|j| {
            sol.preimage(&f.image_of_gen(j))
                .ok_or_else(|| Error::Precondition("map does not land in the image".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let h = ModMap::from_images(&f.src, &i.src, &imgs)?;
    if i.after(&h) != *f {
        return Err(Error::Precondition("factorization is not unique: map is not injective".into()));
    }
    Ok(h)
}

/// Cached solver for `f(x) = y`.
#[derive(Clone, Debug)]
pub struct Preimages {
    snf: Snf,
    map: ModMap,
}

impl Preimages {
    pub fn preimage(&self, y: &[i64]) -> Option<Vec<i64>> {
        let y = self.map.dst.reduce(y);
        let z = self.snf.solve(&y)?;
        Some(self.map.src.reduce(&z[..self.map.src.rank()]))
    }

    pub fn contains(&self, y: &[i64]) -> bool {
        self.preimage(y).is_some()
    }
}

/// Submodule generated by `gens`, with its inclusion.
pub fn submodule(a: &ZModule, gens: &[Vec<i64>]) -> (ZModule, ModMap) {
    let m = a.modulus();
    let k = a.rank();
    let g = gens.len();
    let gmat = Mat::from_cols(k, gens);
    let aug = gmat.hstack(&a.relations());
    let s = snf(&aug, m);
    let kg = s.kernel_gens();
    let rel = Mat::from_cols(g, &(0..kg.cols()).map(|j| kg.col(j)[..g].to_vec()).collect::<Vec<_>>());
    let pres = present(m, g, &rel);
    let sub = pres.module.clone();

    // coordinate fast path: S = sum of (h_i Z e_i)
    let mut hs = Vec::with_capacity(k);
    for (i, &d) in a.factors().iter().enumerate() {
        let mut found = d;
        for h in divisors(d) {
            let mut v = vec![0; k];
            v[i] = h;
            if s.solve(&v).is_some() {
                found = h;
                break;
            }
        }
        hs.push(found);
    }
    let coord_order: u128 = a.factors().iter().zip(&hs).map(|(&d, &h)| (d / h) as u128).product();
    if coord_order == sub.order() {
        let mut idx: Vec<usize> = (0..k).filter(|&i| a.factors()[i] / hs[i] > 1).collect();
        idx.sort_by_key(|&i| a.factors()[i] / hs[i]);
        let ords: Vec<i64> = idx.iter().map(|&i| a.factors()[i] / hs[i]).collect();
        if ords.windows(2).all(|w| w[1] % w[0] == 0) {
            let sub = ZModule::from_factors_unchecked(m, ords);
            let cols: Vec<Vec<i64>> = idx
                .iter()
                .map(|&i| {
                    let mut v = vec![0; k];
                    v[i] = hs[i];
                    v
                })
                .collect();
            let incl = ModMap::from_mat_unchecked(&sub, a, Mat::from_cols(k, &cols));
            return (sub, incl);
        }
    }
    let incl_mat = if g == 0 { Mat::zeros(k, sub.rank()) } else { gmat.mul(&pres.sect, m) };
    let incl = ModMap::from_mat_unchecked(&sub, a, incl_mat);
    (sub, incl)
}

fn divisors(n: i64) -> Vec<i64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Quotient of `a` by the submodule generated by `gens`, with the projection.
pub fn quotient(a: &ZModule, gens: &[Vec<i64>]) -> (ZModule, ModMap) {
    let k = a.rank();
    let rels = a.relations().hstack(&Mat::from_cols(k, gens));
    let pres = present(a.modulus(), k, &rels);
    let proj = ModMap::from_mat_unchecked(a, &pres.module, pres.proj);
    (pres.module, proj)
}

/// A direct sum with its injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: ZModule,
    pub inj: Vec<ModMap>,
    pub proj: Vec<ModMap>,
}

pub fn direct_sum(parts: &[&ZModule]) -> DirectSum {
    assert!(!parts.is_empty(), "direct sum of nothing");
    let m = parts[0].modulus();
    let total: usize = parts.iter().map(|p| p.rank()).sum();
    let mut rels = Mat::zeros(total, total);
    let mut off = 0;
    for p in parts {
        for (i, &d) in p.factors().iter().enumerate() {
            rels.set(off + i, off + i, md(d, m));
        }
        off += p.rank();
    }
    let pres = present(m, total, &rels);
    let module = pres.module.clone();
    let mut inj = Vec::new();
    let mut proj = Vec::new();
    let mut off = 0;
    for p in parts {
        let idx: Vec<usize> = (off..off + p.rank()).collect();
        inj.push(ModMap::from_mat_unchecked(p, &module, pres.proj.select_cols(&idx)));
        proj.push(ModMap::from_mat_unchecked(&module, p, pres.sect.select_rows(&idx)));
        off += p.rank();
    }
    DirectSum { module, inj, proj }
}

pub fn direct_sum2(a: &ZModule, b: &ZModule) -> DirectSum {
    direct_sum(&[a, b])
}

/// Pullback of `f: A -> C` and `g: B -> C`, returned as `(P, pA, pB)`.
pub fn pullback(f: &ModMap, g: &ModMap) -> Result<(ZModule, ModMap, ModMap)> {
    if f.dst != g.dst {
        return Err(Error::Mismatch("pullback of maps with different targets".into()));
    }
    let sum = direct_sum2(&f.src, &g.src);
    let diff = f.after(&sum.proj[0]).minus(&g.after(&sum.proj[1]));
    let (p, incl) = diff.kernel();
    Ok((p, sum.proj[0].after(&incl), sum.proj[1].after(&incl)))
}

/// Pushout of `f: C -> A` and `g: C -> B`, returned as `(Q, iA, iB)`.
pub fn pushout(f: &ModMap, g: &ModMap) -> Result<(ZModule, ModMap, ModMap)> {
    if f.src != g.src {
        return Err(Error::Mismatch("pushout of maps with different sources".into()));
    }
    let sum = direct_sum2(&f.dst, &g.dst);
    let diff = sum.inj[0].after(f).minus(&sum.inj[1].after(g));
    let (q, pr) = diff.cokernel();
    Ok((q, pr.after(&sum.inj[0]), pr.after(&sum.inj[1])))
}

/// Order of `Hom(a, b)`.
pub fn hom_count(a: &ZModule, b: &ZModule) -> u128 {
    let mut n: u128 = 1;
    for &x in a.factors() {
        for &y in b.factors() {
            n *= gcd(x, y) as u128;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::enumerate::{elements, enumerate_homs, modules_up_to, Budget};

    #[test]
    fn kernel_image_cokernel_exhaustive() {
        for m in [4, 6, 12] {
            let mods = modules_up_to(m, 12);
            for a in &mods {
                for b in &mods {
                    if hom_count(a, b) > 200 {
                        continue;
                    }
                    for f in enumerate_homs(a, b, Budget::default()).unwrap() {
                        let (k, ki) = f.kernel();
                        let (im, surj, incl) = f.image();
                        let (c, cp) = f.cokernel();
                        assert_eq!(k.order() * im.order(), a.order());
                        assert_eq!(c.order() * im.order(), b.order());
                        assert!(ki.is_injective() && f.after(&ki).is_zero());
                        assert!(surj.is_surjective() && incl.is_injective());
                        assert_eq!(incl.after(&surj), f);
                        assert!(cp.is_surjective() && cp.after(&f).is_zero());
                        let brute = elements(a).filter(|x| f.apply(x).iter().all(|&v| v == 0)).count();
                        assert_eq!(brute as u128, k.order());
                        let sol = f.solver();
                        for x in elements(a) {
                            let y = f.apply(&x);
                            let z = sol.preimage(&y).unwrap();
                            assert_eq!(f.apply(&z), y);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_pushout_orders() {
        let z4 = ZModule::new(4, vec![4]).unwrap();
        let z2 = ZModule::new(4, vec![2]).unwrap();
        let p = ModMap::new(&z4, &z2, &[vec![1]]).unwrap();
        let (pb, pa, pbb) = pullback(&p, &p).unwrap();
        assert_eq!(pb.order(), 8);
        assert_eq!(p.after(&pa), p.after(&pbb));
        let two = ModMap::scalar(&z4, 2);
        let (q, ia, ib) = pushout(&two, &two).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(ia.after(&two), ib.after(&two));
        let s = direct_sum(&[&z2, &z4, &z2]);
        assert_eq!(s.module.factors(), &[2, 2, 4]);
        for (i, pr) in s.inj.iter().zip(&s.proj) {
            assert_eq!(pr.after(i), ModMap::identity(i.src()));
        }
    }

    #[test]
    fn well_definedness() {
        let z2 = ZModule::new(4, vec![2]).unwrap();
        let z4 = ZModule::new(4, vec![4]).unwrap();
        assert!(ModMap::new(&z2, &z4, &[vec![1]]).is_err());
        assert!(ModMap::new(&z2, &z4, &[vec![2]]).is_ok());
        let iso = ModMap::new(&z4, &z4, &[vec![3]]).unwrap();
        assert_eq!(iso.inverse().unwrap().after(&iso), ModMap::identity(&z4));
    }
}
