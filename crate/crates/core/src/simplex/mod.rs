//! Finite pieces of the simplex category: monotone maps, the truncated
//! categories `Δ[n]` and the shapes used to evaluate Kan extensions.

mod fincat;
mod shapes;

pub use fincat::{nerve, twisted_arrows, FinCat, Nerve, TwistedArrows};
pub use shapes::{tight_factorizations, v_diagram, TightFactorization, VDiagram};

use std::fmt;

use crate::error::{Error, Result};

/// A nondecreasing map `[m] -> [n]`, stored by its values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    values: Vec<usize>,
    dst: usize,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "({})->[{}]", v.join(""), self.dst)
    }
}

impl MonotoneMap {
    pub fn new(values: Vec<usize>, dst: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("a monotone map needs a nonempty source".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > dst) {
            return Err(Error::Precondition(format!("{values:?} is not a monotone map to [{dst}]")));
        }
        Ok(MonotoneMap { values, dst })
    }

    pub(crate) fn of(values: Vec<usize>, dst: usize) -> Self {
        Self::new(values, dst).expect("valid monotone map")
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { values: (0..=n).collect(), dst: n }
    }

    pub fn constant(m: usize, n: usize, l: usize) -> Self {
        Self::of(vec![l; m + 1], n)
    }

    /// `δ_i: [n-1] -> [n]`, skipping `i`.
    pub fn face(n: usize, i: usize) -> Self {
        Self::of((0..n).map(|j| if j < i { j } else { j + 1 }).collect(), n)
    }

    /// `σ_i: [n+1] -> [n]`, hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Self {
        Self::of((0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect(), n)
    }

    /// `s: [l] -> [n]`, `i -> i`.
    pub fn s_embed(l: usize, n: usize) -> Self {
        Self::of((0..=l).collect(), n)
    }

    /// `t: [n-l] -> [n]`, `i -> i + l`.
    pub fn t_embed(l: usize, n: usize) -> Self {
        Self::of((0..=n - l).map(|i| i + l).collect(), n)
    }

    /// All monotone maps `[m] -> [n]`, lexicographically.
    pub fn all(m: usize, n: usize) -> Vec<MonotoneMap> {
        fn go(m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
            if cur.len() == m + 1 {
                out.push(MonotoneMap { values: cur.clone(), dst: n });
                return;
            }
            let lo = cur.last().copied().unwrap_or(0);
            for v in lo..=n {
                cur.push(v);
                go(m, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(m, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn src_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn dst_dim(&self) -> usize {
        self.dst
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MonotoneMap) -> MonotoneMap {
        assert_eq!(first.dst, self.src_dim(), "monotone composition mismatch");
        MonotoneMap { values: first.values.iter().map(|&i| self.values[i]).collect(), dst: self.dst }
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && *self.values.last().unwrap() == self.dst && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// The interval `f^{-1}(l) = {p, ..., q}`, if nonempty.
    pub fn preimage(&self, l: usize) -> Option<(usize, usize)> {
        let p = self.values.iter().position(|&v| v == l)?;
        let q = self.values.iter().rposition(|&v| v == l)?;
        Some((p, q))
    }

    /// Restriction to the interval `[lo, hi]` of the source.
    pub fn restrict(&self, lo: usize, hi: usize) -> MonotoneMap {
        MonotoneMap { values: self.values[lo..=hi].to_vec(), dst: self.dst }
    }
}

/// `f(0) = 0`.
pub fn is_special(f: &MonotoneMap) -> bool {
    f.apply(0) == 0
}

/// `f` factors through `s([l])` or `t([n - l])`.
pub fn in_image_b_l_n(f: &MonotoneMap, l: usize) -> bool {
    f.values.iter().all(|&v| v <= l) || f.values.iter().all(|&v| v >= l)
}

/// An object `⟨[m], f⟩` of `Δ[n]`.
pub type SimplexObj = MonotoneMap;

/// Truncation of `Δ[n]` to objects of dimension at most `d_max`, with
/// membership flags for a chosen vertex `l`.
#[derive(Clone, Debug)]
pub struct TruncCat {
    pub n: usize,
    pub d_max: usize,
    pub l: usize,
    pub objects: Vec<SimplexObj>,
}

impl TruncCat {
    pub fn new(n: usize, d_max: usize, l: usize) -> Self {
        let objects = (0..=d_max).flat_map(|m| MonotoneMap::all(m, n)).collect();
        TruncCat { n, d_max, l, objects }
    }

    /// `(Δ[n])_l`: factors through `s` or `t`.
    pub fn in_lower(&self, f: &SimplexObj) -> bool {
        in_image_b_l_n(f, self.l)
    }

    /// `(Δ[n])^l`: `l` lies in the image.
    pub fn in_upper(&self, f: &SimplexObj) -> bool {
        f.preimage(self.l).is_some()
    }

    /// `(Δ[n])_{l⋄}`.
    pub fn in_diamond(&self, f: &SimplexObj) -> bool {
        self.in_lower(f) || self.in_upper(f)
    }

    /// Arrows `⟨[m], f⟩ -> ⟨[m'], g⟩`: maps `θ` with `g ∘ θ = f`.
    pub fn arrows(f: &SimplexObj, g: &SimplexObj) -> Vec<MonotoneMap> {
        MonotoneMap::all(f.src_dim(), g.src_dim()).into_iter().filter(|t| g.after(t) == *f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_and_images() {
        assert!(is_special(&MonotoneMap::identity(2)));
        assert!(!is_special(&MonotoneMap::of(vec![1], 1)));
        assert!(is_special(&MonotoneMap::s_embed(1, 2)));
        let long = MonotoneMap::of(vec![0, 2], 2);
        assert!(!in_image_b_l_n(&long, 1));
        assert!(in_image_b_l_n(&MonotoneMap::of(vec![0, 1], 2), 1));
        for f in MonotoneMap::all(3, 2) {
            assert!(in_image_b_l_n(&f, 0) && in_image_b_l_n(&f, 2));
        }
    }

    #[test]
    fn image_criterion_by_factorization() {
        for n in 0..=4 {
            for l in 0..=n {
                let s = MonotoneMap::s_embed(l, n);
                let t = MonotoneMap::t_embed(l, n);
                for m in 0..=4 {
                    for f in MonotoneMap::all(m, n) {
                        let via_s = MonotoneMap::all(m, l).iter().any(|g| s.after(g) == f);
                        let via_t = MonotoneMap::all(m, n - l).iter().any(|g| t.after(g) == f);
                        assert_eq!(in_image_b_l_n(&f, l), via_s || via_t);
                    }
                }
            }
        }
    }

    #[test]
    fn special_maps_compose_and_squares_are_pushouts() {
        for n in 0..=3 {
            for m in 0..=3 {
                for f in MonotoneMap::all(m, n) {
                    for k in 0..=3 {
                        for g in MonotoneMap::all(n, k) {
                            if is_special(&f) && is_special(&g) {
                                assert!(is_special(&g.after(&f)));
                            }
                        }
                    }
                }
            }
        }
        // a map out of [n] is determined by its restrictions along s and t, which agree at l
        for n in 1..=4 {
            for l in 0..=n {
                let s = MonotoneMap::s_embed(l, n);
                let t = MonotoneMap::t_embed(l, n);
                for k in 0..=3 {
                    let mut seen = std::collections::HashSet::new();
                    for g in MonotoneMap::all(n, k) {
                        let pair = (g.after(&s), g.after(&t));
                        assert_eq!(pair.0.apply(l), pair.1.apply(0));
                        assert!(seen.insert(pair));
                    }
                    let glued = MonotoneMap::all(l, k)
                        .iter()
                        .flat_map(|a| MonotoneMap::all(n - l, k).into_iter().map(move |b| (a.clone(), b)))
                        .filter(|(a, b)| a.apply(l) == b.apply(0))
                        .count();
                    assert_eq!(glued, seen.len());
                }
            }
        }
    }

    #[test]
    fn truncated_membership() {
        let c = TruncCat::new(2, 3, 1);
        for f in &c.objects {
            assert_eq!(c.in_diamond(f), c.in_lower(f) || c.in_upper(f));
        }
        let outside: Vec<_> = c.objects.iter().filter(|f| !c.in_diamond(f)).collect();
        assert!(outside.iter().all(|f| f.values().iter().all(|&v| v != 1)));
        assert!(outside.contains(&&MonotoneMap::of(vec![0, 2], 2)));
    }
}
