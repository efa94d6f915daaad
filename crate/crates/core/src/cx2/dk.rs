//! Degree-at-most-one Dold-Kan dictionary.

use super::Complex2;
use crate::error::{Error, Result};
use crate::zmod::{direct_sum, direct_sum2, DirectSum, ModMap, ZModule};

/// A simplicial module truncated at level `n_max`.
#[derive(Clone, Debug)]
pub struct SimplicialModule {
    pub levels: Vec<ZModule>,
    /// `faces[n][i]: K_n -> K_{n-1}`, for `n >= 1`; `faces[0]` is empty.
    pub faces: Vec<Vec<ModMap>>,
    /// `degens[n][i]: K_n -> K_{n+1}`, for `n < n_max`.
    pub degens: Vec<Vec<ModMap>>,
}

impl SimplicialModule {
    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    /// Checks the simplicial identities on every truncated level.
    pub fn check_identities(&self) -> Result<()> {
        let bad = |what: String| Err(Error::IllDefinedMap(format!("simplicial identity fails: {what}")));
        let top = self.n_max();
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    if self.faces[n - 1][i].after(&self.faces[n][j]) != self.faces[n - 1][j - 1].after(&self.faces[n][i]) {
                        return bad(format!("d{i} d{j} at level {n}"));
                    }
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                let s = &self.degens[n][j];
                for i in 0..=n + 1 {
                    let lhs = self.faces[n + 1][i].after(s);
                    let ok = if i == j || i == j + 1 {
                        lhs == ModMap::identity(&self.levels[n])
                    } else if i < j {
                        lhs == self.degens[n - 1][j - 1].after(&self.faces[n][i])
                    } else {
                        lhs == self.degens[n - 1][j].after(&self.faces[n][i - 1])
                    };
                    if !ok {
                        return bad(format!("d{i} s{j} at level {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Segal map `K_2 -> K_1 x_{K_0} K_1`, `x -> (d_2 x, d_0 x)`, is an isomorphism.
    pub fn is_segal(&self) -> bool {
        if self.n_max() < 2 {
            return true;
        }
        let (p, pa, pb) = crate::zmod::pullback(&self.faces[1][0], &self.faces[1][1]).expect("common target");
        let sum = direct_sum2(&self.levels[1], &self.levels[1]);
        let seg = sum.inj[0].after(&self.faces[2][2]).plus(&sum.inj[1].after(&self.faces[2][0]));
        let pair = sum.inj[0].after(&pa).plus(&sum.inj[1].after(&pb));
        match crate::zmod::factor_through_injection(&seg, &pair) {
            Ok(h) => h.is_iso() && h.dst() == &p,
            Err(_) => false,
        }
    }
}

fn level(m: &Complex2, n: usize) -> DirectSum {
    let mut parts = vec![m.m0()];
    parts.extend(std::iter::repeat(m.m1()).take(n));
    direct_sum(&parts)
}

/// `Σ T.inj[t] ∘ f ∘ S.proj[s]` over the listed blocks.
fn assemble(s: &DirectSum, t: &DirectSum, blocks: &[(usize, usize, ModMap)]) -> ModMap {
    let mut acc = ModMap::zero(&s.module, &t.module);
    for (si, ti, f) in blocks {
        acc = acc.plus(&t.inj[*ti].after(f).after(&s.proj[*si]));
    }
    acc
}

/// `K_n = M_0 + M_1^n`, the nerve of the action groupoid of `M_1` on `M_0`.
pub fn dk_simplicial(m: &Complex2, n_max: usize) -> Result<SimplicialModule> {
    if n_max < 2 {
        return Err(Error::Precondition("truncation level must be at least 2".into()));
    }
    let sums: Vec<DirectSum> = (0..=n_max + 1).map(|n| level(m, n)).collect();
    let id0 = ModMap::identity(m.m0());
    let id1 = ModMap::identity(m.m1());
    let mut faces = vec![Vec::new()];
    for n in 1..=n_max {
        let (s, t) = (&sums[n], &sums[n - 1]);
        let mut row = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut blocks = vec![(0, 0, id0.clone())];
            for k in 1..=n {
                // z_k lands in slot k, merged with its neighbour or dropped
                let target = match i {
                    0 if k == 1 => Some((0, m.d().clone())),
                    0 => Some((k - 1, id1.clone())),
                    _ if i == n && k == n => None,
                    _ if k <= i => Some((k, id1.clone())),
                    _ => Some((k - 1, id1.clone())),
                };
                if let Some((tk, f)) = target {
                    blocks.push((k, tk, f));
                }
            }
            row.push(assemble(s, t, &blocks));
        }
        faces.push(row);
    }
    let mut degens = Vec::new();
    for n in 0..n_max {
        let (s, t) = (&sums[n], &sums[n + 1]);
        let row = (0..=n)
            .map(|j| {
                let mut blocks = vec![(0, 0, id0.clone())];
                for k in 1..=n {
                    blocks.push((k, if k <= j { k } else { k + 1 }, id1.clone()));
                }
                assemble(s, t, &blocks)
            })
            .collect();
        degens.push(row);
    }
    let levels = sums.into_iter().take(n_max + 1).map(|s| s.module).collect();
    let k = SimplicialModule { levels, faces, degens };
    debug_assert!(k.check_identities().is_ok());
    Ok(k)
}

/// Normalized chains in degrees 0 and 1: `ker d_1 -d_0-> K_0`.
pub fn dk_normalize(k: &SimplicialModule) -> Result<Complex2> {
    if k.n_max() < 1 {
        return Err(Error::Precondition("need at least level 1".into()));
    }
    k.check_identities()?;
    let (_, incl) = k.faces[1][1].kernel();
    Ok(Complex2::new(k.faces[1][0].after(&incl)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let z4 = ZModule::new(4, vec![4]).unwrap();
        let z2 = ZModule::new(4, vec![2]).unwrap();
        let v = ZModule::new(4, vec![2, 4]).unwrap();
        let cases = [
            Complex2::new(ModMap::scalar(&z4, 2)),
            Complex2::zero_differential(&z2, &z4),
            Complex2::identity_on(&v),
            Complex2::new(ModMap::new(&v, &z4, &[vec![2, 1]]).unwrap()),
        ];
        for m in &cases {
            let k = dk_simplicial(m, 3).unwrap();
            k.check_identities().unwrap();
            assert!(k.is_segal());
            assert_eq!(&dk_normalize(&k).unwrap(), m);
        }
    }

    #[test]
    fn degree_zero_complex_is_constant() {
        let a = ZModule::new(4, vec![2, 4]).unwrap();
        let zero = a.ring().zero();
        let k = dk_simplicial(&Complex2::zero_differential(&zero, &a), 2).unwrap();
        assert!(k.levels.iter().all(|l| l == &a));
        assert!(k.faces.iter().flatten().all(|f| *f == ModMap::identity(&a)));
    }

    #[test]
    fn broken_faces_are_rejected() {
        let z4 = ZModule::new(4, vec![4]).unwrap();
        let mut k = dk_simplicial(&Complex2::new(ModMap::scalar(&z4, 2)), 2).unwrap();
        k.faces[2][1] = k.faces[2][2].clone();
        assert!(dk_normalize(&k).is_err());
    }
}
