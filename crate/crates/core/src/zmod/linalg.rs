//! Dense matrices over Z/m and Smith normal form with change-of-basis witnesses.

use std::fmt;

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b).
pub(crate) fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[inline]
pub(crate) fn md(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

#[inline]
pub(crate) fn mulmod(a: i64, b: i64, m: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(m as i128)) as i64
}

/// Inverse of `a` modulo `n`, if it exists.
pub(crate) fn inv_mod(a: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(0);
    }
    let (g, x, _) = xgcd(md(a, n), n);
    (g == 1).then(|| md(x, n))
}

/// `gcd(s, m)` with the convention that the residue 0 generates the zero ideal,
/// i.e. its "gcd" is `m` itself.
#[inline]
pub(crate) fn ideal_gen(s: i64, m: i64) -> i64 {
    let s = md(s, m);
    if s == 0 {
        m
    } else {
        gcd(s, m)
    }
}

/// A unit `u` of Z/m with `s*u = gcd(s, m)` (mod m). `s` must be nonzero mod m.
fn normalizing_unit(s: i64, m: i64) -> i64 {
    let g = gcd(md(s, m), m);
    let mg = m / g;
    let u0 = inv_mod(md(s, m) / g, mg).expect("s/g is a unit modulo m/g");
    let mut u = u0;
    while gcd(u, m) != 1 {
        u += mg;
    }
    md(u, m)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Mat { rows, cols, data }
    }

    pub fn from_row_vecs(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_cols(rows: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column has wrong length");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Mat, m: i64) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = md(out.get(i, j) + mulmod(a, b, m), m);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[i64], m: i64) -> Vec<i64> {
        assert_eq!(self.cols, x.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for (j, &xj) in x.iter().enumerate() {
                    acc = md(acc + mulmod(self.get(i, j), xj, m), m);
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(r, j, self.get(i, j));
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out.set(i, c, self.get(i, j));
            }
        }
        out
    }

    pub fn scale(&self, s: i64, m: i64) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| mulmod(v, s, m)).collect() }
    }

    pub fn add(&self, other: &Mat, m: i64) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| md(a + b, m)).collect(),
        }
    }

    /// Reduce row `i` modulo `moduli[i]` (a modulus of 0 or `m` leaves the row mod `m`).
    pub fn reduce_rows(&mut self, moduli: &[i64]) {
        assert_eq!(moduli.len(), self.rows);
        for i in 0..self.rows {
            let d = moduli[i];
            for j in 0..self.cols {
                let v = self.get(i, j);
                self.set(i, j, md(v, d));
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// rows (i, j) <- E * rows (i, j) with E = [[x, y], [u, v]].
    fn row_op2(&mut self, i: usize, j: usize, e: [i64; 4], m: i64) {
        for c in 0..self.cols {
            let a = self.get(i, c);
            let b = self.get(j, c);
            self.set(i, c, md(mulmod(e[0], a, m) + mulmod(e[1], b, m), m));
            self.set(j, c, md(mulmod(e[2], a, m) + mulmod(e[3], b, m), m));
        }
    }

    /// cols (i, j) <- cols (i, j) * F with F = [[x, y], [u, v]].
    fn col_op2(&mut self, i: usize, j: usize, f: [i64; 4], m: i64) {
        for r in 0..self.rows {
            let a = self.get(r, i);
            let b = self.get(r, j);
            self.set(r, i, md(mulmod(a, f[0], m) + mulmod(b, f[2], m), m));
            self.set(r, j, md(mulmod(a, f[1], m) + mulmod(b, f[3], m), m));
        }
    }
}

/// Smith form `p * a * q = diag`, with `p_inv = p^{-1}`. The diagonal is a chain
/// `d_0 | d_1 | ...` of divisors of `m`, with 0 standing for the zero ideal.
#[derive(Clone, Debug)]
pub struct Snf {
    pub m: i64,
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<i64>,
    pub p: Mat,
    pub p_inv: Mat,
    pub q: Mat,
}

struct SnfCalc {
    m: i64,
    a: Mat,
    p: Mat,
    p_inv: Mat,
    q: Mat,
}

impl SnfCalc {
    fn row_op2(&mut self, i: usize, j: usize, e: [i64; 4]) {
        let m = self.m;
        self.a.row_op2(i, j, e, m);
        self.p.row_op2(i, j, e, m);
        // det E = 1, so E^{-1} = [[v, -y], [-u, x]]
        let inv = [e[3], md(-e[1], m), md(-e[2], m), e[0]];
        self.p_inv.col_op2(i, j, inv, m);
    }

    fn col_op2(&mut self, i: usize, j: usize, f: [i64; 4]) {
        let m = self.m;
        self.a.col_op2(i, j, f, m);
        self.q.col_op2(i, j, f, m);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
    }

    fn scale_row(&mut self, i: usize, u: i64) {
        let m = self.m;
        let ui = inv_mod(u, m).expect("scaling by a unit");
        for c in 0..self.a.cols {
            let v = self.a.get(i, c);
            self.a.set(i, c, mulmod(v, u, m));
        }
        for c in 0..self.p.cols {
            let v = self.p.get(i, c);
            self.p.set(i, c, mulmod(v, u, m));
        }
        for r in 0..self.p_inv.rows {
            let v = self.p_inv.get(r, i);
            self.p_inv.set(r, i, mulmod(v, ui, m));
        }
    }

    /// Clear entry (i, t) against the pivot (t, t) by row operations.
    fn clear_below(&mut self, t: usize, i: usize) {
        let m = self.m;
        let p = self.a.get(t, t);
        let e = self.a.get(i, t);
        let g = gcd(p, m);
        if e % g == 0 {
            let k = mulmod(e / g, inv_mod(p / g, m / g).unwrap(), m);
            self.row_op2(t, i, [1, 0, md(-k, m), 1]);
        } else {
            let (gg, x, y) = xgcd(p, e);
            self.row_op2(t, i, [md(x, m), md(y, m), md(-(e / gg), m), md(p / gg, m)]);
        }
    }

    fn clear_right(&mut self, t: usize, j: usize) {
        let m = self.m;
        let p = self.a.get(t, t);
        let e = self.a.get(t, j);
        let g = gcd(p, m);
        if e % g == 0 {
            let k = mulmod(e / g, inv_mod(p / g, m / g).unwrap(), m);
            self.col_op2(t, j, [1, md(-k, m), 0, 1]);
        } else {
            let (gg, x, y) = xgcd(p, e);
            // new col_t = x col_t + y col_j ; new col_j = -(e/g) col_t + (p/g) col_j
            self.col_op2(t, j, [md(x, m), md(-(e / gg), m), md(y, m), md(p / gg, m)]);
        }
    }

    fn run(mut self) -> Snf {
        let m = self.m;
        let (rows, cols) = (self.a.rows, self.a.cols);
        let r = rows.min(cols);
        for t in 0..r {
            // pivot: nonzero entry whose ideal is largest
            let mut best: Option<(i64, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = self.a.get(i, j);
                    if v != 0 {
                        let g = gcd(v, m);
                        if best.map_or(true, |(bg, _, _)| g < bg) {
                            best = Some((g, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.a.get(i, t) != 0 {
                        self.clear_below(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if self.a.get(t, j) != 0 {
                        self.clear_right(t, j);
                        dirty = true;
                    }
                }
                let clean = (t + 1..rows).all(|i| self.a.get(i, t) == 0)
                    && (t + 1..cols).all(|j| self.a.get(t, j) == 0);
                if clean || !dirty {
                    break;
                }
            }
        }
        // normalize diagonal entries to divisors of m
        for t in 0..r {
            let s = self.a.get(t, t);
            if s != 0 && gcd(s, m) != s {
                let u = normalizing_unit(s, m);
                self.scale_row(t, u);
            }
        }
        // enforce the divisibility chain
        let as_int = |v: i64| if v == 0 { m } else { v };
        for i in 0..r {
            for j in i + 1..r {
                let a = as_int(self.a.get(i, i));
                let b = as_int(self.a.get(j, j));
                if b % a == 0 {
                    continue;
                }
                let (g, x, y) = xgcd(a, b);
                self.row_op2(i, j, [1, 1, 0, 1]);
                self.col_op2(i, j, [md(x, m), md(-(b / g), m), md(y, m), md(a / g, m)]);
                let k = md((b / g) * y, m);
                self.row_op2(i, j, [1, 0, md(-k, m), 1]);
                debug_assert_eq!(self.a.get(i, j), 0);
                debug_assert_eq!(self.a.get(j, i), 0);
            }
        }
        let diag = (0..r).map(|t| self.a.get(t, t)).collect();
        Snf { m, rows, cols, diag, p: self.p, p_inv: self.p_inv, q: self.q }
    }
}

pub fn snf(a: &Mat, m: i64) -> Snf {
    let mut a = a.clone();
    for v in a.data.iter_mut() {
        *v = md(*v, m);
    }
    let calc = SnfCalc {
        m,
        p: Mat::identity(a.rows),
        p_inv: Mat::identity(a.rows),
        q: Mat::identity(a.cols),
        a,
    };
    calc.run()
}

impl Snf {
    /// Ideal generator (divisor of m) of the i-th invariant factor of the cokernel,
    /// for every row index.
    pub fn coker_factors(&self) -> Vec<i64> {
        (0..self.rows)
            .map(|i| if i < self.diag.len() { ideal_gen(self.diag[i], self.m) } else { self.m })
            .collect()
    }

    /// Order of the column span of the original matrix.
    pub fn image_order(&self) -> u128 {
        self.diag.iter().map(|&s| (self.m / ideal_gen(s, self.m)) as u128).product()
    }

    /// Generators (as columns) of the kernel of the original matrix.
    pub fn kernel_gens(&self) -> Mat {
        let m = self.m;
        let mut gens = Vec::new();
        for i in 0..self.cols {
            let coef = if i < self.diag.len() {
                let g = ideal_gen(self.diag[i], m);
                if g == m {
                    1
                } else {
                    m / g
                }
            } else {
                1
            };
            if coef % m == 0 {
                continue;
            }
            let v: Vec<i64> = self.q.col(i).iter().map(|&x| mulmod(x, coef, m)).collect();
            if v.iter().any(|&x| x != 0) {
                gens.push(v);
            }
        }
        Mat::from_cols(self.cols, &gens)
    }

    /// Some `x` with `a x = y` (mod m), if one exists.
    pub fn solve(&self, y: &[i64]) -> Option<Vec<i64>> {
        let m = self.m;
        let c = self.p.mul_vec(y, m);
        let mut z = vec![0i64; self.cols];
        for i in 0..self.rows {
            if i < self.diag.len() {
                let s = self.diag[i];
                let g = ideal_gen(s, m);
                if c[i] % g != 0 {
                    return None;
                }
                if g == m {
                    continue;
                }
                let mg = m / g;
                let inv = inv_mod((s / g) % mg, mg).expect("unit after dividing by the gcd");
                z[i] = mulmod(c[i] / g, inv, mg);
            } else if c[i] != 0 {
                return None;
            }
        }
        Some(self.q.mul_vec(&z, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Mat, m: i64) -> Snf {
        let s = snf(a, m);
        let d = s.p.mul(a, m).mul(&s.q, m);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j { s.diag[i] } else { 0 };
                assert_eq!(d.get(i, j), want, "not diagonal: {:?}", d);
            }
        }
        assert_eq!(s.p.mul(&s.p_inv, m), Mat::identity(a.rows()));
        for w in s.diag.windows(2) {
            let (x, y) = (ideal_gen(w[0], m), ideal_gen(w[1], m));
            assert_eq!(y % x, 0, "chain broken: {:?}", s.diag);
        }
        s
    }

    #[test]
    fn small_cases() {
        let s = check(&Mat::from_rows(2, 2, vec![2, 0, 0, 0]), 4);
        assert_eq!(s.coker_factors(), vec![2, 4]);
        let s = check(&Mat::from_rows(2, 2, vec![2, 0, 0, 3]), 6);
        assert_eq!(s.coker_factors(), vec![1, 6]);
        let s = check(&Mat::from_rows(2, 3, vec![4, 6, 2, 3, 9, 1]), 12);
        let _ = s;
    }

    #[test]
    fn exhaustive_2x2_mod_12() {
        let m = 12;
        for a in 0..m {
            for b in (0..m).step_by(5) {
                for c in (0..m).step_by(7) {
                    for d in 0..m {
                        check(&Mat::from_rows(2, 2, vec![a, b, c, d]), m);
                    }
                }
            }
        }
    }

    #[test]
    fn solve_and_kernel() {
        let m = 4;
        let a = Mat::from_rows(1, 1, vec![2]);
        let s = snf(&a, m);
        assert_eq!(s.solve(&[1]), None);
        let x = s.solve(&[2]).unwrap();
        assert_eq!(a.mul_vec(&x, m), vec![2]);
        let k = s.kernel_gens();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0), 2);
    }
}
