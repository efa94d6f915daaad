use super::{aut_order, find_morphism, is_splitting, MorphismSpace, Splitting};
use crate::cx2::Complex2;
use crate::error::{Error, Result};
use crate::mutation;
use crate::zmod::{
    direct_sum, direct_sum2, elements, factor_through_injection, factor_through_surjection, hom_count, quotient, Budget,
    DirectSum, ModMap, Preimages, ZModule,
};

/// One connected component: a representative and its automorphism count.
#[derive(Clone, Debug)]
pub struct Component {
    pub rep: Splitting,
    pub aut_order: u128,
    /// Number of enumerated objects in the component (brute-force only).
    pub size: Option<usize>,
}

/// A skeleton of `Spl(M)`: one splitting per isomorphism class.
#[derive(Clone, Debug)]
pub struct SplGroupoid {
    complex: Complex2,
    components: Vec<Component>,
    classifier: Option<Classifier>,
}

/// Reads off the component of a splitting from its coordinates `c_j`,
/// defined by `h_j x_j = a(c_j)` for lifts `x_j` with `b(x_j) = u_j`.
#[derive(Clone, Debug)]
struct Classifier {
    h: Vec<i64>,
    lifts: Vec<Vec<i64>>,
    base: Vec<Vec<i64>>,
    kernels: Vec<Preimages>,
    dsol: Preimages,
    c0: DirectSum,
    proj: ModMap,
}

impl Classifier {
    fn index(&self, m: &Complex2, s: &Splitting) -> Option<usize> {
        let (m0, m1, mt) = (m.m0(), m.m1(), &s.mtil);
        let pb = m.pi().after(&s.b).solver();
        let asol = s.a.solver();
        let mut x = self.c0.module.zero_elem();
        for (j, &hj) in self.h.iter().enumerate() {
            let xj = pb.preimage(&m.h0().basis(j))?;
            let y = self.dsol.preimage(&m0.add(&s.b.apply(&xj), &m0.neg(&self.lifts[j])))?;
            let xj = mt.add(&xj, &mt.neg(&s.a.apply(&y)));
            let cj = asol.preimage(&mt.scale(hj, &xj))?;
            let kj = self.kernels[j].preimage(&m1.add(&cj, &m1.neg(&self.base[j])))?;
            x = self.c0.module.add(&x, &self.c0.inj[j].apply(&kj));
        }
        // position in the order of `elements`, last coordinate fastest
        let q = self.proj.apply(&x);
        let f = self.proj.dst().factors();
        Some(q.iter().zip(f).fold(0usize, |acc, (&v, &d)| acc * d as usize + v as usize))
    }
}

impl SplGroupoid {
    pub(crate) fn from_components(complex: &Complex2, components: Vec<Component>) -> Self {
        SplGroupoid { complex: complex.clone(), components, classifier: None }
    }

    pub fn complex(&self) -> &Complex2 {
        &self.complex
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `|π_0|`.
    pub fn pi0(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn reps(&self) -> Vec<&Splitting> {
        self.components.iter().map(|c| &c.rep).collect()
    }

    pub fn aut_orders(&self) -> Vec<u128> {
        self.components.iter().map(|c| c.aut_order).collect()
    }

    /// Index of the component containing `s`.
    pub fn component_of(&self, s: &Splitting) -> Option<usize> {
        match &self.classifier {
            Some(cl) if !mutation::active().drop_side_condition => {
                if !is_splitting(&self.complex, s) {
                    return None;
                }
                cl.index(&self.complex, s).filter(|&k| k < self.components.len())
            }
            _ => self.components.iter().position(|c| find_morphism(s, &c.rep).is_some()),
        }
    }

    /// All morphisms between two representatives.
    pub fn morphisms(&self, i: usize, j: usize) -> Vec<ModMap> {
        MorphismSpace::new(&self.components[i].rep, &self.components[j].rep).all()
    }

    /// Representatives are pairwise non-isomorphic, every one is a splitting
    /// and every self-morphism is invertible.
    pub fn verify(&self) -> Result<()> {
        for (i, c) in self.components.iter().enumerate() {
            if !is_splitting(&self.complex, &c.rep) {
                return Err(Error::Internal(format!("component {i} is not a splitting")));
            }
            for (j, d) in self.components.iter().enumerate().skip(i + 1) {
                if find_morphism(&c.rep, &d.rep).is_some() {
                    return Err(Error::Internal(format!("components {i} and {j} are isomorphic")));
                }
            }
            if aut_order(&c.rep) != c.aut_order {
                return Err(Error::Internal(format!("component {i} has a wrong automorphism count")));
            }
        }
        Ok(())
    }
}

/// `M~_c = (M_1 + (Z/m)^r) / <(-c_j, h_j e_j)>` with `a` the inclusion and
/// `b(x, λ) = d x + Σ λ_j u_j`, where `u_j` lifts the `j`-th generator of `H_0`.
pub(crate) fn splitting_for(m: &Complex2, lifts: &[Vec<i64>], c: &[Vec<i64>]) -> Result<Splitting> {
    let h = m.h0().factors();
    let free = m.m1().ring().free(h.len());
    let sum = direct_sum2(m.m1(), &free);
    let gens: Vec<Vec<i64>> = c
        .iter()
        .enumerate()
        .map(|(j, cj)| {
            let x = sum.inj[0].apply(&m.m1().neg(cj));
            let mut e = free.zero_elem();
            e[j] = h[j];
            sum.module.add(&x, &sum.inj[1].apply(&e))
        })
        .collect();
    let (_, q) = quotient(&sum.module, &gens);
    let u = ModMap::from_images(&free, m.m0(), lifts)?;
    let b = factor_through_surjection(&m.d().copair(&u, &sum), &q)?;
    Ok(Splitting::new(q.after(&sum.inj[0]), b))
}

/// Enumerate `Spl(M)` up to isomorphism.
///
/// Components are indexed by `C_0 / h H_1^r` where `C_0 = ⊕ H_1[m/h_j]`;
/// under a mutation dropping the side condition the brute-force search is
/// used instead, since the indexing relies on it.
pub fn enumerate_splittings(m: &Complex2, budget: Budget) -> Result<SplGroupoid> {
    if mutation::active().drop_side_condition {
        return super::enumerate_splittings_brute(m, budget);
    }
    let mm = m.modulus();
    let h0 = m.h0().clone();
    let h = h0.factors().to_vec();
    let lifts: Vec<Vec<i64>> = (0..h.len()).map(|j| m.lift_h0(&h0.basis(j))).collect();
    let target = direct_sum2(m.m0(), m.m1());
    let mut base = Vec::with_capacity(h.len());
    let mut kernels = Vec::with_capacity(h.len());
    for (j, &hj) in h.iter().enumerate() {
        let l = m.d().pair(&ModMap::scalar(m.m1(), mm / hj), &target);
        let rhs = target.inj[0].apply(&m.m0().scale(hj, &lifts[j]));
        match l.preimage(&rhs) {
            Some(c) => base.push(c),
            None => return Ok(SplGroupoid::from_components(m, Vec::new())),
        }
        kernels.push(l.kernel());
    }
    let aut = hom_count(m.h0(), m.h1());
    if h.is_empty() {
        let s = splitting_for(m, &[], &[])?;
        return Ok(SplGroupoid::from_components(m, vec![Component { rep: s, aut_order: aut, size: None }]));
    }
    let c0 = direct_sum(&kernels.iter().map(|(k, _)| k).collect::<Vec<_>>());
    let w = direct_sum(&vec![m.h1(); h.len()]);
    let mut moves = ModMap::zero(&w.module, &c0.module);
    for (j, &hj) in h.iter().enumerate() {
        let hw = ModMap::scalar(m.m1(), hj).after(m.iota());
        let into_kj = factor_through_injection(&hw, &kernels[j].1)?;
        moves = moves.plus(&c0.inj[j].after(&into_kj).after(&w.proj[j]));
    }
    let (pi0, proj) = moves.cokernel();
    budget.check("splitting components", pi0.order())?;
    let sol = proj.solver();
    let mut components = Vec::new();
    for q in elements(&pi0) {
        let lift = sol.preimage(&q).expect("projection is surjective");
        let c: Vec<Vec<i64>> = (0..h.len())
            .map(|j| {
                let kj = kernels[j].1.apply(&c0.proj[j].apply(&lift));
                m.m1().add(&base[j], &kj)
            })
            .collect();
        let rep = splitting_for(m, &lifts, &c)?;
        debug_assert!(is_splitting(m, &rep));
        components.push(Component { rep, aut_order: aut, size: None });
    }
    let kernels = kernels.iter().map(|(_, inc)| inc.solver()).collect();
    let classifier = Classifier { h, lifts, base, kernels, dsol: m.d().solver(), c0, proj };
    Ok(SplGroupoid { complex: m.clone(), components, classifier: Some(classifier) })
}

/// Extensions `0 -> H_1 -> E -> H_0 -> 0` up to isomorphism: splittings of `[H_1 -0-> H_0]`.
pub fn enumerate_extensions(h0: &ZModule, h1: &ZModule, budget: Budget) -> Result<SplGroupoid> {
    enumerate_splittings(&Complex2::zero_differential(h1, h0), budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: i64, f: &[i64]) -> ZModule {
        ZModule::new(m, f.to_vec()).unwrap()
    }

    #[test]
    fn small_groupoids() {
        let z2 = z(4, &[2]);
        let z4 = z(4, &[4]);
        let b = Budget::default();
        let g = enumerate_splittings(&Complex2::zero_differential(&z2, &z2), b).unwrap();
        g.verify().unwrap();
        assert_eq!(g.pi0(), 2);
        assert_eq!(g.aut_orders(), vec![2, 2]);
        let mut mids: Vec<_> = g.reps().iter().map(|s| s.mtil.factors().to_vec()).collect();
        mids.sort();
        assert_eq!(mids, vec![vec![2, 2], vec![4]]);
        assert!(enumerate_splittings(&Complex2::new(ModMap::scalar(&z4, 2)), b).unwrap().is_empty());
        let idc = enumerate_splittings(&Complex2::identity_on(&z(4, &[2, 4])), b).unwrap();
        assert_eq!(idc.pi0(), 1);
        assert_eq!(idc.aut_orders(), vec![1]);
        assert_eq!(enumerate_extensions(&z4, &z2, b).unwrap().pi0(), 1);
        assert_eq!(enumerate_extensions(&z2, &z4.ring().zero(), b).unwrap().pi0(), 1);
    }

    #[test]
    fn classifier_agrees_with_search() {
        let b = Budget::default();
        let z2 = z(4, &[2]);
        let z22 = z(4, &[2, 2]);
        let z24 = z(4, &[2, 4]);
        let cases = [
            Complex2::zero_differential(&z22, &z22),
            Complex2::zero_differential(&z2, &z24),
            Complex2::zero_differential(&z24, &z2),
            Complex2::new(ModMap::new(&z22, &z22, &[vec![1, 0], vec![0, 0]]).unwrap()),
        ];
        for m in &cases {
            let g = enumerate_splittings(m, b).unwrap();
            assert!(g.pi0() > 1, "{m:?}");
            for (k, c) in g.components().iter().enumerate() {
                assert_eq!(g.component_of(&c.rep), Some(k));
                // an isomorphic copy: twist the middle module by an automorphism
                for phi in crate::zmod::automorphisms(&c.rep.mtil, b).unwrap().iter().take(5) {
                    let t = Splitting::new(phi.after(&c.rep.a), c.rep.b.after(&phi.inverse().unwrap()));
                    assert_eq!(g.component_of(&t), Some(k));
                }
            }
        }
    }
}
