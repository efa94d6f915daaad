//! `Hom(X, Y)` as a finite module, and linear problems whose unknowns are maps.

use super::linalg::{gcd, md, Mat};
use super::map::{direct_sum, DirectSum, ModMap};
use super::module::{present, ZModule};

/// `Hom(X, Y)`. Entry `(i, j)` of a map is `(y_i / g_ij) * t_ij` with
/// `g_ij = gcd(x_j, y_i)` and `t_ij` in `Z/g_ij`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src: ZModule,
    dst: ZModule,
    orders: Vec<i64>,
    module: ZModule,
    proj: Mat,
    sect: Mat,
}

impl HomSpace {
    pub fn new(src: &ZModule, dst: &ZModule) -> Self {
        let m = src.modulus();
        let mut orders = Vec::with_capacity(src.rank() * dst.rank());
        for &y in dst.factors() {
            for &x in src.factors() {
                orders.push(gcd(x, y));
            }
        }
        let n = orders.len();
        let mut rels = Mat::zeros(n, n);
        for (k, &g) in orders.iter().enumerate() {
            rels.set(k, k, md(g, m));
        }
        let pres = present(m, n, &rels);
        HomSpace {
            src: src.clone(),
            dst: dst.clone(),
            orders,
            module: pres.module,
            proj: pres.proj,
            sect: pres.sect,
        }
    }

    pub fn src(&self) -> &ZModule {
        &self.src
    }

    pub fn dst(&self) -> &ZModule {
        &self.dst
    }

    /// The hom group as a canonical module.
    pub fn module(&self) -> &ZModule {
        &self.module
    }

    pub fn order(&self) -> u128 {
        self.module.order()
    }

    fn coords_to_map(&self, t: &[i64]) -> ModMap {
        let (r, c) = (self.dst.rank(), self.src.rank());
        let mut mat = Mat::zeros(r, c);
        for i in 0..r {
            let y = self.dst.factors()[i];
            for j in 0..c {
                let g = self.orders[i * c + j];
                mat.set(i, j, md((y / g) * md(t[i * c + j], g), y));
            }
        }
        ModMap::from_mat_unchecked(&self.src, &self.dst, mat)
    }

    fn map_to_coords(&self, f: &ModMap) -> Vec<i64> {
        assert!(f.src() == &self.src && f.dst() == &self.dst, "map outside the hom space");
        let (r, c) = (self.dst.rank(), self.src.rank());
        let mut t = vec![0; r * c];
        for i in 0..r {
            let y = self.dst.factors()[i];
            for j in 0..c {
                let g = self.orders[i * c + j];
                t[i * c + j] = f.matrix().get(i, j) / (y / g);
            }
        }
        t
    }

    /// Map corresponding to an element of [`Self::module`].
    pub fn decode(&self, h: &[i64]) -> ModMap {
        let t = self.sect.mul_vec(h, self.src.modulus());
        self.coords_to_map(&t)
    }

    pub fn encode(&self, f: &ModMap) -> Vec<i64> {
        let t = self.map_to_coords(f);
        self.module.reduce(&self.proj.mul_vec(&t, self.src.modulus()))
    }
}

/// A linear map `L: Hom(X_1, Y_1) + ... -> Hom(Z_1, W_1) + ...` given by a
/// closure on tuples of maps.
#[derive(Clone, Debug)]
pub struct LinearOp {
    unknowns: Vec<HomSpace>,
    targets: Vec<HomSpace>,
    usum: DirectSum,
    tsum: DirectSum,
    op: ModMap,
}

fn sum_of(spaces: &[HomSpace], m: i64) -> DirectSum {
    if spaces.is_empty() {
        let z = ZModule::from_factors_unchecked(m, vec![]);
        return direct_sum(&[&z]);
    }
    let mods: Vec<&ZModule> = spaces.iter().map(|s| s.module()).collect();
    direct_sum(&mods)
}

impl LinearOp {
    pub fn new<F>(unknowns: Vec<HomSpace>, targets: Vec<HomSpace>, f: F) -> Self
    where
        F: Fn(&[ModMap]) -> Vec<ModMap>,
    {
        let m = unknowns.first().or(targets.first()).expect("empty linear problem").src().modulus();
        let usum = sum_of(&unknowns, m);
        let tsum = sum_of(&targets, m);
        let mut cols = Vec::with_capacity(usum.module.rank());
        for g in 0..usum.module.rank() {
            let x = usum.module.basis(g);
            let maps = Self::split(&unknowns, &usum, &x);
            let out = f(&maps);
            cols.push(Self::join(&targets, &tsum, &out));
        }
        let op = ModMap::from_images(&usum.module, &tsum.module, &cols)
            .expect("linear operator on hom spaces is well defined");
        LinearOp { unknowns, targets, usum, tsum, op }
    }

    fn split(spaces: &[HomSpace], sum: &DirectSum, x: &[i64]) -> Vec<ModMap> {
        spaces
            .iter()
            .zip(&sum.proj)
            .map(|(s, p)| s.decode(&p.apply(x)))
            .collect()
    }

    fn join(spaces: &[HomSpace], sum: &DirectSum, maps: &[ModMap]) -> Vec<i64> {
        assert_eq!(maps.len(), spaces.len(), "wrong number of maps");
        let mut acc = sum.module.zero_elem();
        for ((s, i), f) in spaces.iter().zip(&sum.inj).zip(maps) {
            acc = sum.module.add(&acc, &i.apply(&s.encode(f)));
        }
        acc
    }

    /// Source module (tuples of unknown maps).
    pub fn domain(&self) -> &ZModule {
        &self.usum.module
    }

    pub fn decode(&self, x: &[i64]) -> Vec<ModMap> {
        Self::split(&self.unknowns, &self.usum, x)
    }

    pub fn encode(&self, maps: &[ModMap]) -> Vec<i64> {
        Self::join(&self.unknowns, &self.usum, maps)
    }

    pub fn apply(&self, maps: &[ModMap]) -> Vec<ModMap> {
        let y = self.op.apply(&self.encode(maps));
        Self::split(&self.targets, &self.tsum, &y)
    }

    /// Some tuple with `L(x) = rhs`.
    pub fn solve(&self, rhs: &[ModMap]) -> Option<Vec<ModMap>> {
        let y = Self::join(&self.targets, &self.tsum, rhs);
        self.op.preimage(&y).map(|x| self.decode(&x))
    }

    /// Kernel of `L` with its inclusion into [`Self::domain`].
    pub fn kernel(&self) -> (ZModule, ModMap) {
        self.op.kernel()
    }

    pub fn operator(&self) -> &ModMap {
        &self.op
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::map::hom_count;

    #[test]
    fn hom_space_round_trip() {
        let a = ZModule::new(12, vec![2, 6]).unwrap();
        let b = ZModule::new(12, vec![4, 12]).unwrap();
        let h = HomSpace::new(&a, &b);
        assert_eq!(h.order(), hom_count(&a, &b));
        for g in 0..h.module().rank() {
            let f = h.decode(&h.module().basis(g));
            assert_eq!(h.encode(&f), h.module().basis(g));
        }
    }

    #[test]
    fn chain_maps_as_kernel() {
        // chain maps of [Z/4 -2-> Z/4] to itself: f0 * 2 = 2 * f1
        let z4 = ZModule::new(4, vec![4]).unwrap();
        let d = ModMap::scalar(&z4, 2);
        let hs = HomSpace::new(&z4, &z4);
        let dd = d.clone();
        let op = LinearOp::new(vec![hs.clone(), hs.clone()], vec![hs], move |f| {
            vec![dd.after(&f[1]).minus(&f[0].after(&dd))]
        });
        let (k, _) = op.kernel();
        // f0 - f1 must be even: 4 * 2 = 8 pairs
        assert_eq!(k.order(), 8);
    }
}
