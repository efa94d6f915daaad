use std::fmt;

use serde::{Deserialize, Serialize};

use super::linalg::{gcd, md, snf, Mat, Snf};
use crate::error::{Error, Result};

/// The base ring Z/m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    m: i64,
}

impl Ring {
    pub fn new(m: i64) -> Result<Self> {
        if !(2..=(1i64 << 31)).contains(&m) {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Ring { m })
    }

    pub fn modulus(&self) -> i64 {
        self.m
    }

    /// Canonical module with the given invariant factors.
    pub fn module(&self, factors: &[i64]) -> Result<ZModule> {
        ZModule::new(self.m, factors.to_vec())
    }

    /// Canonical form of a direct sum of cyclic modules Z/c_i (c_i | m, any order).
    pub fn cyclic_sum(&self, orders: &[i64]) -> Result<ZModule> {
        for &c in orders {
            if c < 1 || self.m % c != 0 {
                return Err(Error::InvalidFactors { m: self.m, factors: orders.to_vec() });
            }
        }
        let rels = Mat::from_cols(
            orders.len(),
            &orders
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let mut v = vec![0; orders.len()];
                    v[i] = md(c, self.m);
                    v
                })
                .collect::<Vec<_>>(),
        );
        Ok(present(self.m, orders.len(), &rels).module)
    }

    pub fn free(&self, rank: usize) -> ZModule {
        ZModule { m: self.m, factors: vec![self.m; rank] }
    }

    pub fn zero(&self) -> ZModule {
        ZModule { m: self.m, factors: vec![] }
    }
}

/// A finite Z/m-module in invariant-factor form `Z/d_1 + ... + Z/d_k` with
/// `1 < d_1 | d_2 | ... | d_k | m`. Elements are coordinate vectors with
/// the i-th entry reduced modulo `d_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZModule {
    m: i64,
    factors: Vec<i64>,
}

impl fmt::Debug for ZModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.factors)
    }
}

impl fmt::Display for ZModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl ZModule {
    pub fn new(m: i64, factors: Vec<i64>) -> Result<Self> {
        Ring::new(m)?;
        let bad = || Error::InvalidFactors { m, factors: factors.clone() };
        for (i, &d) in factors.iter().enumerate() {
            if d <= 1 || m % d != 0 {
                return Err(bad());
            }
            if i > 0 && d % factors[i - 1] != 0 {
                return Err(bad());
            }
        }
        Ok(ZModule { m, factors })
    }

    pub(crate) fn from_factors_unchecked(m: i64, factors: Vec<i64>) -> Self {
        debug_assert!(ZModule::new(m, factors.clone()).is_ok(), "bad factors {factors:?}");
        ZModule { m, factors }
    }

    pub fn modulus(&self) -> i64 {
        self.m
    }

    pub fn ring(&self) -> Ring {
        Ring { m: self.m }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero_elem(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.rank(), "element has wrong length for {self:?}");
        x.iter().zip(&self.factors).map(|(&v, &d)| md(v, d)).collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter().zip(y).zip(&self.factors).map(|((&a, &b), &d)| md(a + b, d)).collect()
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        x.iter().zip(&self.factors).map(|(&a, &d)| md(-a, d)).collect()
    }

    pub fn scale(&self, s: i64, x: &[i64]) -> Vec<i64> {
        x.iter().zip(&self.factors).map(|(&a, &d)| md(a * md(s, d), d)).collect()
    }

    pub fn basis(&self, i: usize) -> Vec<i64> {
        let mut v = self.zero_elem();
        v[i] = 1;
        v
    }

    /// Relation matrix of the standard presentation on `rank` generators.
    pub(crate) fn relations(&self) -> Mat {
        let k = self.rank();
        let mut r = Mat::zeros(k, k);
        for (i, &d) in self.factors.iter().enumerate() {
            r.set(i, i, md(d, self.m));
        }
        r
    }

    /// Annihilator order of an element.
    pub fn element_order(&self, x: &[i64]) -> i64 {
        let mut o = 1;
        for (&v, &d) in x.iter().zip(&self.factors) {
            let v = md(v, d);
            if v != 0 {
                let oi = d / gcd(v, d);
                o = o / gcd(o, oi) * oi;
            }
        }
        o
    }
}

/// Result of canonicalizing `Z/m^k / colspan(rels)`.
#[derive(Clone, Debug)]
pub(crate) struct Presented {
    pub module: ZModule,
    /// n x k: free coordinates to canonical coordinates.
    pub proj: Mat,
    /// k x n: canonical generators lifted to free coordinates.
    pub sect: Mat,
}

/// Canonical form of the cokernel of `rels` (k x r) over Z/m, with witnesses.
///
/// When the relation span is spanned by multiples of standard basis vectors
/// whose orders already form a divisibility chain after a stable sort, the
/// standard coordinates are kept.
pub(crate) fn present(m: i64, k: usize, rels: &Mat) -> Presented {
    assert_eq!(rels.rows(), k, "relation matrix has wrong row count");
    let s = snf(rels, m);
    let row_gen: Vec<i64> = (0..k)
        .map(|i| {
            let mut g = m;
            for j in 0..rels.cols() {
                g = gcd(g, md(rels.get(i, j), m));
            }
            g
        })
        .collect();
    let coord_span: u128 = row_gen.iter().map(|&g| (m / g) as u128).product();
    if coord_span == s.image_order() {
        let mut idx: Vec<usize> = (0..k).filter(|&i| row_gen[i] > 1).collect();
        idx.sort_by_key(|&i| row_gen[i]);
        let chain = idx.windows(2).all(|w| row_gen[w[1]] % row_gen[w[0]] == 0);
        if chain {
            let n = idx.len();
            let mut proj = Mat::zeros(n, k);
            let mut sect = Mat::zeros(k, n);
            for (r, &i) in idx.iter().enumerate() {
                proj.set(r, i, 1);
                sect.set(i, r, 1);
            }
            let factors = idx.iter().map(|&i| row_gen[i]).collect();
            return Presented { module: ZModule::from_factors_unchecked(m, factors), proj, sect };
        }
    }
    let f = s.coker_factors();
    let keep: Vec<usize> = (0..k).filter(|&i| f[i] > 1).collect();
    let factors: Vec<i64> = keep.iter().map(|&i| f[i]).collect();
    let mut proj = s.p.select_rows(&keep);
    proj.reduce_rows(&factors);
    let sect = s.p_inv.select_cols(&keep);
    Presented { module: ZModule::from_factors_unchecked(m, factors), proj, sect }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_validation() {
        assert!(ZModule::new(4, vec![2, 4]).is_ok());
        assert!(ZModule::new(4, vec![4, 2]).is_err());
        assert!(ZModule::new(4, vec![1]).is_err());
        assert!(ZModule::new(6, vec![2, 3]).is_err());
        assert!(Ring::new(1).is_err());
    }

    #[test]
    fn cyclic_sums_canonicalize() {
        let r = Ring::new(6).unwrap();
        assert_eq!(r.cyclic_sum(&[2, 3]).unwrap().factors(), &[6]);
        let r = Ring::new(4).unwrap();
        assert_eq!(r.cyclic_sum(&[4, 2, 1]).unwrap().factors(), &[2, 4]);
        let r = Ring::new(12).unwrap();
        assert_eq!(r.cyclic_sum(&[4, 6]).unwrap().factors(), &[2, 12]);
    }
}

/// Cokernel of `mat` (columns are relations) in invariant-factor form, with
/// the diagonalization `p · mat · q = diag` as witness.
pub fn smith_normal_form(mat: &Mat, ring: Ring) -> (ZModule, Snf) {
    let m = ring.modulus();
    let s = snf(mat, m);
    let mut factors: Vec<i64> = s.coker_factors().into_iter().filter(|&d| d > 1).collect();
    factors.sort_unstable();
    (ZModule::from_factors_unchecked(m, factors), s)
}
