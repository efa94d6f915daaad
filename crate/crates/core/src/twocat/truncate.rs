//! The truncation: complexes as objects, isomorphism classes of
//! 1-morphisms as arrows.

use std::collections::HashMap;
use std::sync::Mutex;

use super::oracle::{derived_compose, derived_hom_oracle, DerivedHom};
use super::{compose, hom_category, to_zigzag, HomCategory, OneMorphism};
use crate::cx2::Complex2;
use crate::error::{Error, Result};
use crate::zmod::Budget;

/// A finite category on the given objects. Arrows `i -> j` are indices into
/// `homs[i][j].morphisms()`.
#[derive(Debug)]
pub struct Truncation {
    pub objects: Vec<Complex2>,
    homs: Vec<Vec<HomCategory>>,
    arrows: Vec<Vec<Vec<OneMorphism>>>,
    table: Mutex<HashMap<(usize, usize, usize, usize, usize), usize>>,
}

pub fn truncate(objects: &[Complex2], budget: Budget) -> Result<Truncation> {
    let mut homs = Vec::new();
    let mut arrows = Vec::new();
    for m in objects {
        let mut row = Vec::new();
        let mut arow = Vec::new();
        for n in objects {
            let h = hom_category(m, n, budget)?;
            arow.push(h.morphisms()?);
            row.push(h);
        }
        homs.push(row);
        arrows.push(arow);
    }
    Ok(Truncation { objects: objects.to_vec(), homs, arrows, table: Mutex::new(HashMap::new()) })
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct AxiomReport {
    pub identities_checked: usize,
    pub triples_checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The End ring of one object compared with the oracle.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RingCheck {
    pub order: usize,
    pub oracle_order: u128,
    /// Arrows map bijectively onto oracle classes.
    pub bijective: bool,
    /// Composition agrees with oracle composition.
    pub multiplicative: bool,
    /// `2 x = 0` for every class.
    pub char_two: bool,
    /// Arrows `e != 0` with `e ∘ e = 0`.
    pub square_zero: Vec<usize>,
    pub identity: usize,
    pub zero: usize,
}

impl RingCheck {
    /// Four elements, characteristic two, a nonzero square-zero element:
    /// the ring is `F_2[e]/e^2`.
    pub fn is_dual_numbers(&self) -> bool {
        self.order == 4 && self.bijective && self.multiplicative && self.char_two && !self.square_zero.is_empty()
    }
}

impl Truncation {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn hom(&self, i: usize, j: usize) -> &HomCategory {
        &self.homs[i][j]
    }

    pub fn hom_size(&self, i: usize, j: usize) -> usize {
        self.arrows[i][j].len()
    }

    pub fn arrow(&self, i: usize, j: usize, k: usize) -> &OneMorphism {
        &self.arrows[i][j][k]
    }

    fn locate(&self, i: usize, j: usize, f: &OneMorphism) -> Result<usize> {
        self.homs[i][j]
            .index_of(f)
            .ok_or_else(|| Error::Internal("composite lies in no component of the Hom groupoid".into()))
    }

    pub fn identity(&self, i: usize) -> Result<usize> {
        self.locate(i, i, &OneMorphism::identity(&self.objects[i])?)
    }

    /// `b ∘ a` for `a: i -> j`, `b: j -> l`.
    pub fn compose(&self, i: usize, j: usize, l: usize, a: usize, b: usize) -> Result<usize> {
        let key = (i, j, l, a, b);
        if let Some(&c) = self.table.lock().expect("table lock").get(&key) {
            return Ok(c);
        }
        let c = self.locate(i, l, &compose(&self.arrows[i][j][a], &self.arrows[j][l][b])?)?;
        self.table.lock().expect("table lock").insert(key, c);
        Ok(c)
    }

    /// Unit laws on every arrow and associativity on every composable triple.
    pub fn check_axioms(&self) -> Result<AxiomReport> {
        let n = self.len();
        let mut rep = AxiomReport::default();
        let ids: Vec<usize> = (0..n).map(|i| self.identity(i)).collect::<Result<_>>()?;
        for i in 0..n {
            for j in 0..n {
                for a in 0..self.hom_size(i, j) {
                    rep.identities_checked += 1;
                    if self.compose(i, i, j, ids[i], a)? != a || self.compose(i, j, j, a, ids[j])? != a {
                        rep.failures.push(format!("unit law fails for arrow {a} of {i} -> {j}"));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for a in 0..self.hom_size(i, j) {
                            for b in 0..self.hom_size(j, k) {
                                let ba = self.compose(i, j, k, a, b)?;
                                for c in 0..self.hom_size(k, l) {
                                    rep.triples_checked += 1;
                                    let left = self.compose(i, k, l, ba, c)?;
                                    let cb = self.compose(j, k, l, b, c)?;
                                    if left != self.compose(i, j, l, a, cb)? {
                                        rep.failures.push(format!("associativity fails for {a}, {b}, {c} on {i} {j} {k} {l}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    /// Oracle class of every arrow `i -> j`.
    pub fn oracle_classes(&self, i: usize, j: usize, oracle: &DerivedHom) -> Result<Vec<Vec<i64>>> {
        self.arrows[i][j].iter().map(|f| oracle.class_of_zigzag(&to_zigzag(f)?)).collect()
    }

    pub fn end_ring(&self, i: usize) -> Result<RingCheck> {
        let m = &self.objects[i];
        let oracle = derived_hom_oracle(m, m)?;
        let classes = self.oracle_classes(i, i, &oracle)?;
        let size = classes.len();
        let mut sorted = classes.clone();
        sorted.sort();
        sorted.dedup();
        let bijective = sorted.len() == size && size as u128 == oracle.order();
        let mut multiplicative = true;
        let mut square_zero = Vec::new();
        let zero_class = oracle.group().zero_elem();
        let zero = classes.iter().position(|c| *c == zero_class).unwrap_or(usize::MAX);
        for a in 0..size {
            for b in 0..size {
                let c = self.compose(i, i, i, a, b)?;
                if classes[c] != derived_compose(&oracle, &oracle, &oracle, &classes[a], &classes[b])? {
                    multiplicative = false;
                }
                if a == b && a != zero && c == zero {
                    square_zero.push(a);
                }
            }
        }
        let group = oracle.group();
        let char_two = oracle.classes().iter().all(|x| group.scale(2, x) == zero_class);
        Ok(RingCheck {
            order: size,
            oracle_order: oracle.order(),
            bijective,
            multiplicative,
            char_two,
            square_zero,
            identity: self.identity(i)?,
            zero,
        })
    }
}
