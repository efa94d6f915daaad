//! Finite categories stored extensionally, their twisted arrows and nerves.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite category: arrows are indexed, `comp[(g, f)] = g ∘ f`.
#[derive(Clone, Debug)]
pub struct FinCat {
    pub objects: usize,
    /// `(source, target)` per arrow.
    pub arrows: Vec<(usize, usize)>,
    pub identities: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
}

impl FinCat {
    pub fn new(objects: usize, arrows: Vec<(usize, usize)>, identities: Vec<usize>, comp: HashMap<(usize, usize), usize>) -> Result<Self> {
        let c = FinCat { objects, arrows, identities, comp };
        c.check()?;
        Ok(c)
    }

    /// The poset `[n]`: one arrow `i -> j` for `i <= j`.
    pub fn ordinal(n: usize) -> Self {
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                index.insert((i, j), arrows.len());
                arrows.push((i, j));
            }
        }
        let identities = (0..=n).map(|i| index[&(i, i)]).collect();
        let mut comp = HashMap::new();
        for (&(i, j), &f) in &index {
            for k in j..=n {
                comp.insert((index[&(j, k)], f), index[&(i, k)]);
            }
        }
        FinCat { objects: n + 1, arrows, identities, comp }
    }

    pub fn point() -> Self {
        Self::ordinal(0)
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].0
    }

    pub fn dst(&self, f: usize) -> usize {
        self.arrows[f].1
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f] == (a, b)).collect()
    }

    /// Units, closure and associativity.
    pub fn check(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::IllDefinedMap(format!("not a category: {s}")));
        for (f, &(a, b)) in self.arrows.iter().enumerate() {
            if self.compose(self.identities[b], f) != Some(f) || self.compose(f, self.identities[a]) != Some(f) {
                return bad("unit law");
            }
        }
        for f in 0..self.arrows.len() {
            for g in 0..self.arrows.len() {
                let composable = self.src(g) == self.dst(f);
                if composable != self.compose(g, f).is_some() {
                    return bad("composition is not defined exactly on composable pairs");
                }
                if !composable {
                    continue;
                }
                for h in 0..self.arrows.len() {
                    if self.src(h) == self.dst(g) {
                        let l = self.compose(h, self.compose(g, f).unwrap()).unwrap();
                        let r = self.compose(self.compose(h, g).unwrap(), f).unwrap();
                        if l != r {
                            return bad("associativity");
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `tw(I)` with its projections `σ` (target, to `I`) and `τ` (source, to `I^o`).
/// A morphism `f -> f'` is a pair `(u, v)` with `f' = v ∘ f ∘ u`.
#[derive(Clone, Debug)]
pub struct TwistedArrows {
    pub cat: FinCat,
    /// Object of `tw(I)` = arrow of `I`.
    pub objects: Vec<usize>,
    /// Arrow of `tw(I)` = `(u, v)`.
    pub pairs: Vec<(usize, usize)>,
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
}

pub fn twisted_arrows(i: &FinCat) -> Result<TwistedArrows> {
    let objects: Vec<usize> = (0..i.arrows.len()).collect();
    let mut arrows = Vec::new();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for &f in &objects {
        for &g in &objects {
            for u in i.hom(i.src(g), i.src(f)) {
                for v in i.hom(i.dst(f), i.dst(g)) {
                    if i.compose(v, i.compose(f, u).unwrap()) == Some(g) {
                        index.insert((f, g, u, v), arrows.len());
                        arrows.push((f, g));
                        pairs.push((u, v));
                    }
                }
            }
        }
    }
    let identities = objects.iter().map(|&f| index[&(f, f, i.identities[i.src(f)], i.identities[i.dst(f)])]).collect();
    let mut comp = HashMap::new();
    for (x, &(f, g)) in arrows.iter().enumerate() {
        for (y, &(g2, h)) in arrows.iter().enumerate() {
            if g2 != g {
                continue;
            }
            let (u1, v1) = pairs[x];
            let (u2, v2) = pairs[y];
            let u = i.compose(u1, u2).unwrap();
            let v = i.compose(v2, v1).unwrap();
            comp.insert((y, x), index[&(f, h, u, v)]);
        }
    }
    let cat = FinCat::new(objects.len(), arrows, identities, comp)?;
    let sigma = objects.iter().map(|&f| i.dst(f)).collect();
    let tau = objects.iter().map(|&f| i.src(f)).collect();
    Ok(TwistedArrows { cat, objects, pairs, sigma, tau })
}

impl TwistedArrows {
    /// `σ^{-1}(x) ≅ (I / x)^o`: objects are arrows into `x`, and the fiber
    /// arrows `f -> f'` (with `v = id`) match slice arrows `f' -> f`.
    pub fn check_sigma_fiber(&self, i: &FinCat, x: usize) -> bool {
        let fib: Vec<usize> = self.objects.iter().copied().filter(|&f| self.sigma[f] == x).collect();
        let slice: Vec<usize> = (0..i.arrows.len()).filter(|&f| i.dst(f) == x).collect();
        if fib != slice {
            return false;
        }
        fib.iter().all(|&f| {
            fib.iter().all(|&g| {
                let in_fiber = (0..self.cat.arrows.len())
                    .filter(|&a| self.cat.arrows[a] == (f, g) && self.pairs[a].1 == i.identities[x])
                    .count();
                let in_slice = i.hom(i.src(g), i.src(f)).into_iter().filter(|&u| i.compose(f, u) == Some(g)).count();
                in_fiber == in_slice
            })
        })
    }

    /// `τ^{-1}(x) ≅ x \ I`.
    pub fn check_tau_fiber(&self, i: &FinCat, x: usize) -> bool {
        let fib: Vec<usize> = self.objects.iter().copied().filter(|&f| self.tau[f] == x).collect();
        fib.iter().all(|&f| {
            fib.iter().all(|&g| {
                let in_fiber = (0..self.cat.arrows.len())
                    .filter(|&a| self.cat.arrows[a] == (f, g) && self.pairs[a].0 == i.identities[x])
                    .count();
                let in_coslice = i.hom(i.dst(f), i.dst(g)).into_iter().filter(|&v| i.compose(v, f) == Some(g)).count();
                in_fiber == in_coslice
            })
        })
    }
}

/// Truncated nerve: `n`-simplices are strings of `n` composable arrows
/// (objects for `n = 0`).
#[derive(Clone, Debug)]
pub struct Nerve {
    pub simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    identities: Vec<usize>,
}

pub fn nerve(i: &FinCat, d_max: usize) -> Nerve {
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![(0..i.objects).map(|x| vec![x]).collect()];
    for n in 1..=d_max {
        let mut level = Vec::new();
        if n == 1 {
            level = (0..i.arrows.len()).map(|f| vec![f]).collect();
        } else {
            for s in &simplices[n - 1] {
                for f in 0..i.arrows.len() {
                    if i.src(f) == i.dst(*s.last().unwrap()) {
                        let mut t = s.clone();
                        t.push(f);
                        level.push(t);
                    }
                }
            }
        }
        simplices.push(level);
    }
    let index = simplices
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
        .collect();
    Nerve { simplices, index, identities: i.identities.clone() }
}

impl Nerve {
    /// Face `d_j` of the `k`-th `n`-simplex.
    pub fn face(&self, i: &FinCat, n: usize, k: usize, j: usize) -> usize {
        let s = &self.simplices[n][k];
        let t: Vec<usize> = if n == 1 {
            vec![if j == 0 { i.dst(s[0]) } else { i.src(s[0]) }]
        } else if j == 0 {
            s[1..].to_vec()
        } else if j == n {
            s[..n - 1].to_vec()
        } else {
            let mut t = s[..j - 1].to_vec();
            t.push(i.compose(s[j], s[j - 1]).unwrap());
            t.extend_from_slice(&s[j + 1..]);
            t
        };
        self.index[n - 1][&t]
    }

    /// A simplex is degenerate when one of its arrows is an identity.
    pub fn is_degenerate(&self, n: usize, k: usize) -> bool {
        n > 0 && self.simplices[n][k].iter().any(|f| self.identities.contains(f))
    }

    pub fn nondegenerate(&self, n: usize) -> usize {
        (0..self.simplices[n].len()).filter(|&k| !self.is_degenerate(n, k)).count()
    }

    /// `N_2 -> N_1 x_{N_0} N_1` is a bijection.
    pub fn is_segal(&self, i: &FinCat) -> bool {
        if self.simplices.len() < 3 {
            return true;
        }
        let mut seen = std::collections::HashSet::new();
        for k in 0..self.simplices[2].len() {
            let pair = (self.face(i, 2, k, 2), self.face(i, 2, k, 0));
            if !seen.insert(pair) {
                return false;
            }
        }
        let glued = (0..i.arrows.len())
            .flat_map(|f| (0..i.arrows.len()).map(move |g| (f, g)))
            .filter(|&(f, g)| i.dst(f) == i.src(g))
            .count();
        glued == seen.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_arrow_counts_and_fibers() {
        assert_eq!(twisted_arrows(&FinCat::point()).unwrap().objects.len(), 1);
        for n in 1..=2 {
            let i = FinCat::ordinal(n);
            let tw = twisted_arrows(&i).unwrap();
            assert_eq!(tw.objects.len(), (n + 1) * (n + 2) / 2);
            for x in 0..=n {
                assert!(tw.check_sigma_fiber(&i, x));
                assert!(tw.check_tau_fiber(&i, x));
            }
        }
    }

    #[test]
    fn nerve_counts() {
        let i = FinCat::ordinal(1);
        let n = nerve(&i, 3);
        assert_eq!(n.simplices[0].len(), 2);
        assert_eq!(n.simplices[1].len(), 3);
        assert!(n.is_segal(&i));
        let p = FinCat::point();
        let np = nerve(&p, 3);
        assert!(np.simplices.iter().all(|l| l.len() == 1));
        let i2 = FinCat::ordinal(2);
        let n2 = nerve(&i2, 3);
        assert_eq!(n2.nondegenerate(2), 1);
        assert!(n2.is_segal(&i2));
        for k in 0..n2.simplices[3].len() {
            for a in 0..3 {
                for b in a + 1..4 {
                    // d_a d_b = d_{b-1} d_a
                    let l = n2.face(&i2, 2, n2.face(&i2, 3, k, b), a);
                    let r = n2.face(&i2, 2, n2.face(&i2, 3, k, a), b - 1);
                    assert_eq!(l, r);
                }
            }
        }
    }
}
