//! Splittings `M_1 -a-> M~ -b-> M_0` of a complex and the groupoid they form.

mod brute;
mod functors;
mod groupoid;

use std::fmt;

pub use brute::{enumerate_extensions_brute, enumerate_splittings_brute};
pub use functors::{post_compose_splitting, pre_compose_splitting, transfer_splitting};
pub use groupoid::{enumerate_extensions, enumerate_splittings, Component, SplGroupoid};

use crate::cx2::Complex2;
use crate::mutation;
use crate::zmod::{elements, HomSpace, LinearOp, ModMap, ZModule};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Splitting {
    pub mtil: ZModule,
    pub a: ModMap,
    pub b: ModMap,
}

impl fmt::Debug for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Splitting({:?}; a={:?}, b={:?})", self.mtil, self.a.matrix(), self.b.matrix())
    }
}

impl Splitting {
    pub fn new(a: ModMap, b: ModMap) -> Self {
        Splitting { mtil: a.dst().clone(), a, b }
    }

    /// The tight chain map `[M_1 -a-> M~] -> M` given by `(id, b)`.
    pub fn tight_map(&self, m: &Complex2) -> crate::cx2::ChainMap2 {
        let src = Complex2::new(self.a.clone());
        crate::cx2::ChainMap2::new(&src, m, ModMap::identity(m.m1()), self.b.clone())
            .expect("b ∘ a = d makes (id, b) a chain map")
    }
}

/// `ker b ⊆ im a`.
pub fn side_condition(s: &Splitting) -> bool {
    let (_, kb) = s.b.kernel();
    let sol = s.a.solver();
    (0..kb.src().rank()).all(|j| sol.contains(&kb.image_of_gen(j)))
}

/// `a` injective, `b` surjective, `b ∘ a = d`, and `ker b ⊆ im a` unless that
/// condition is switched off by a mutation.
pub fn is_splitting(m: &Complex2, s: &Splitting) -> bool {
    if s.a.src() != m.m1() || s.b.dst() != m.m0() || s.a.dst() != &s.mtil || s.b.src() != &s.mtil {
        return false;
    }
    if s.b.after(&s.a) != *m.d() || !s.a.is_injective() || !s.b.is_surjective() {
        return false;
    }
    mutation::active().drop_side_condition || side_condition(s)
}

/// Maps `φ: M~ -> M~'` with `φ a = a'` and `b' φ = b`, as a particular solution
/// plus the group of differences.
pub struct MorphismSpace {
    pub particular: Option<ModMap>,
    pub differences: ZModule,
    op: LinearOp,
    incl: ModMap,
}

impl MorphismSpace {
    pub fn new(s: &Splitting, t: &Splitting) -> Self {
        let hs = HomSpace::new(&s.mtil, &t.mtil);
        let (sa, tb) = (s.a.clone(), t.b.clone());
        let op = LinearOp::new(
            vec![hs],
            vec![HomSpace::new(s.a.src(), &t.mtil), HomSpace::new(&s.mtil, t.b.dst())],
            move |f| vec![f[0].after(&sa), tb.after(&f[0])],
        );
        let particular = op.solve(&[t.a.clone(), s.b.clone()]).map(|mut v| v.remove(0));
        let (differences, incl) = op.kernel();
        MorphismSpace { particular, differences, op, incl }
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn count(&self) -> u128 {
        if self.is_empty() {
            0
        } else {
            self.differences.order()
        }
    }

    /// Every morphism, in a fixed order.
    pub fn all(&self) -> Vec<ModMap> {
        let Some(p) = &self.particular else { return Vec::new() };
        elements(&self.differences)
            .map(|k| p.plus(&self.op.decode(&self.incl.apply(&k))[0]))
            .collect()
    }
}

/// Some morphism of splittings `s -> t`.
pub fn find_morphism(s: &Splitting, t: &Splitting) -> Option<ModMap> {
    if s.a.src() != t.a.src() || s.b.dst() != t.b.dst() {
        return None;
    }
    MorphismSpace::new(s, t).particular
}

/// Number of invertible self-maps of `s`.
pub fn aut_order(s: &Splitting) -> u128 {
    let ms = MorphismSpace::new(s, s);
    if mutation::active().drop_side_condition {
        ms.all().iter().filter(|f| f.is_iso()).count() as u128
    } else {
        ms.count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: i64, f: &[i64]) -> ZModule {
        ZModule::new(m, f.to_vec()).unwrap()
    }

    #[test]
    fn literal_definition_counterexample() {
        let z2 = z(4, &[2]);
        let z4 = z(4, &[4]);
        let zero = z4.ring().zero();
        let m = Complex2::zero_differential(&zero, &z2);
        let s = Splitting::new(ModMap::zero(&zero, &z4), ModMap::new(&z4, &z2, &[vec![1]]).unwrap());
        assert!(!is_splitting(&m, &s));
        let relaxed = mutation::Mutations { drop_side_condition: true, ..Default::default() };
        assert!(mutation::with_mutations(relaxed, || is_splitting(&m, &s)));
    }

    #[test]
    fn canonical_split() {
        let a = z(4, &[2]);
        let b = z(4, &[4]);
        let m = Complex2::zero_differential(&a, &b);
        let sum = crate::zmod::direct_sum2(&a, &b);
        let s = Splitting::new(sum.inj[0].clone(), sum.proj[1].clone());
        assert!(is_splitting(&m, &s));
        assert_eq!(aut_order(&s), 2);
        assert!(s.tight_map(&m).is_tight());
    }
}
