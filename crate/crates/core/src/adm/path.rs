//! Path-object functors: `from_complex` over `Δ`, the functor of a
//! 1-morphism over `Δ[1]`, and the endpoint Kan extensions.
//!
//! An object `f: [m] -> [1]` with `a` zeros and `b` ones has degree-1 part
//! `M_1^a + N_1^b` (one summand per vertex). Degree 0 is a base module plus
//! one summand per step between consecutive vertices of the same block:
//! the base is `M_0`, `N_0`, or `W_0` when both blocks are present. The
//! differential is `d` of the first vertex (or the zigzag differential on
//! the two vertices around the crossing) on the base, and the difference of
//! neighbouring vertices on each step.

use super::{AdmFunctor, Domain, Node, Rule, DEFAULT_D_MAX};
use crate::cx2::{complex_sum, ChainMap2, Complex2};
use crate::error::{Error, Result};
use crate::simplex::{MonotoneMap, SimplexObj};
use crate::zmod::{direct_sum, direct_sum2, DirectSum, ModMap, ZModule};

fn sum_of(parts: &[&ZModule]) -> DirectSum {
    if parts.len() == 1 {
        let id = ModMap::identity(parts[0]);
        return DirectSum { module: parts[0].clone(), inj: vec![id.clone()], proj: vec![id] };
    }
    direct_sum(parts)
}

fn total(maps: Vec<ModMap>, src: &ZModule, dst: &ZModule) -> ModMap {
    maps.into_iter().fold(ModMap::zero(src, dst), |a, b| a.plus(&b))
}

#[derive(Clone)]
struct Crossing {
    w: Complex2,
    /// `W_1`'s differential read on `M_1 + N_1` through the legs.
    dx: ModMap,
    sum: DirectSum,
    g0: ModMap,
    f0: ModMap,
}

#[derive(Clone)]
struct PathRule {
    blocks: Vec<Complex2>,
    cross: Option<Crossing>,
}

struct Layout {
    a: usize,
    b: usize,
    s1: DirectSum,
    s0: DirectSum,
}

impl Layout {
    fn vertex_block(&self, i: usize) -> usize {
        usize::from(i >= self.a)
    }

    fn mixed(&self) -> bool {
        self.a > 0 && self.b > 0
    }

    /// Summand of degree 0 for the step ending at vertex `i`.
    fn step(&self, i: usize) -> usize {
        if i < self.a {
            i
        } else {
            1 + self.a.saturating_sub(1) + (i - self.a - 1)
        }
    }

    fn is_step(&self, i: usize) -> bool {
        i > 0 && i != self.a
    }
}

impl PathRule {
    fn counts(f: &SimplexObj) -> (usize, usize) {
        let a = f.values().iter().filter(|&&v| v == 0).count();
        (a, f.values().len() - a)
    }

    fn layout(&self, f: &SimplexObj) -> Layout {
        let (a, b) = Self::counts(f);
        let bm = |k: usize| &self.blocks[k];
        let mut p1: Vec<&ZModule> = Vec::new();
        p1.extend(std::iter::repeat(bm(0).m1()).take(a));
        if b > 0 {
            p1.extend(std::iter::repeat(bm(1).m1()).take(b));
        }
        let base = match (a, b) {
            (_, 0) => bm(0).m0(),
            (0, _) => bm(1).m0(),
            _ => self.cross.as_ref().expect("mixed objects need a crossing").w.m0(),
        };
        let mut p0: Vec<&ZModule> = vec![base];
        p0.extend(std::iter::repeat(bm(0).m1()).take(a.saturating_sub(1)));
        if b > 0 {
            p0.extend(std::iter::repeat(bm(1).m1()).take(b - 1));
        }
        Layout { a, b, s1: sum_of(&p1), s0: sum_of(&p0) }
    }

    fn differential(&self, l: &Layout) -> ModMap {
        let (s1, s0) = (&l.s1, &l.s0);
        let mut parts = Vec::new();
        let base = if l.mixed() {
            let c = self.cross.as_ref().expect("crossing");
            c.dx.after(&s1.proj[l.a - 1].pair(&s1.proj[l.a], &c.sum))
        } else {
            self.blocks[l.vertex_block(0)].d().after(&s1.proj[0])
        };
        parts.push(s0.inj[0].after(&base));
        for i in 1..l.a + l.b {
            if l.is_step(i) {
                parts.push(s0.inj[l.step(i)].after(&s1.proj[i].minus(&s1.proj[i - 1])));
            }
        }
        total(parts, &s1.module, &s0.module)
    }

    fn steps(&self, l: &Layout, lo: usize, hi: usize) -> ModMap {
        // steps lo < i <= hi, all in one block
        let blk = &self.blocks[l.vertex_block(hi.max(lo))];
        total((lo + 1..=hi).map(|i| l.s0.proj[l.step(i)].clone()).collect(), &l.s0.module, blk.m1())
    }
}

impl Rule for PathRule {
    fn value(&self, f: &SimplexObj) -> Result<Node> {
        if f.src_dim() == 0 {
            return Ok(Node::plain(self.blocks[f.apply(0)].clone()));
        }
        let l = self.layout(f);
        Ok(Node::plain(Complex2::new(self.differential(&l))))
    }

    fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj, src: &Node, dst: &Node) -> Result<ChainMap2> {
        let lf = self.layout(f);
        let lg = self.layout(g);
        let m_g = g.src_dim();
        let f1 = total(
            (0..=m_g).map(|j| lg.s1.inj[j].after(&lf.s1.proj[theta.apply(j)])).collect(),
            &lf.s1.module,
            &lg.s1.module,
        );
        let mut parts = Vec::new();
        for j in 1..=m_g {
            if lg.is_step(j) {
                parts.push(lg.s0.inj[lg.step(j)].after(&self.steps(&lf, theta.apply(j - 1), theta.apply(j))));
            }
        }
        let pb = &lf.s0.proj[0];
        let base = match (lf.mixed(), lg.mixed()) {
            (false, false) => {
                let blk = &self.blocks[lg.vertex_block(0)];
                pb.plus(&blk.d().after(&self.steps(&lf, 0, theta.apply(0))))
            }
            (true, false) => {
                let c = self.cross.as_ref().expect("crossing");
                if g.apply(0) == 0 {
                    let d = self.blocks[0].d();
                    c.g0.after(pb).minus(&d.after(&self.steps(&lf, theta.apply(0), lf.a - 1)))
                } else {
                    let d = self.blocks[1].d();
                    c.f0.after(pb).plus(&d.after(&self.steps(&lf, lf.a, theta.apply(0))))
                }
            }
            (true, true) => {
                let c = self.cross.as_ref().expect("crossing");
                let back = c.dx.after(&c.sum.inj[0]).after(&self.steps(&lf, theta.apply(lg.a - 1), lf.a - 1));
                let fwd = c.dx.after(&c.sum.inj[1]).after(&self.steps(&lf, lf.a, theta.apply(lg.a)));
                pb.minus(&back).plus(&fwd)
            }
            (false, true) => return Err(Error::Internal("arrow from a one-block object to a mixed one".into())),
        };
        parts.push(lg.s0.inj[0].after(&base));
        let f0 = total(parts, &lf.s0.module, &lg.s0.module);
        ChainMap2::new(&src.complex, &dst.complex, f1, f0)
    }
}

/// The path-object functor `Δ^o -> C_[0,1]` of a complex: `[M_1^{k+1} -> M_0 + M_1^k]`
/// at `[k]`, and `M` itself at `[0]`.
pub fn from_complex(m: &Complex2) -> AdmFunctor {
    from_complex_to(m, DEFAULT_D_MAX)
}

pub fn from_complex_to(m: &Complex2, d_max: usize) -> AdmFunctor {
    AdmFunctor::with_rule(0, d_max, Domain::All, PathRule { blocks: vec![m.clone()], cross: None })
}

/// The functor over `Δ[1]` of a zigzag `M <-g- W -f-> N` whose degree-1 legs
/// identify `W_1` with `M_1 + N_1`. It restricts to `from_complex` on both
/// vertices and takes the value `W` (reparametrized) on the edge.
pub fn morphism_functor(g: &ChainMap2, f: &ChainMap2) -> Result<AdmFunctor> {
    morphism_functor_to(g, f, DEFAULT_D_MAX)
}

pub fn morphism_functor_to(g: &ChainMap2, f: &ChainMap2, d_max: usize) -> Result<AdmFunctor> {
    if g.src() != f.src() {
        return Err(Error::Mismatch("zigzag legs have different sources".into()));
    }
    let w = g.src().clone();
    let sum = direct_sum2(g.dst().m1(), f.dst().m1());
    let legs = g.f1().pair(f.f1(), &sum);
    if !legs.is_iso() {
        return Err(Error::Precondition("degree-1 legs do not identify W_1 with M_1 + N_1".into()));
    }
    let dx = w.d().after(&legs.inverse()?);
    let cross = Crossing { w, dx, sum, g0: g.f0().clone(), f0: f.f0().clone() };
    let rule = PathRule { blocks: vec![g.dst().clone(), f.dst().clone()], cross: Some(cross) };
    Ok(AdmFunctor::with_rule(1, d_max, Domain::All, rule))
}

struct EndpointRule {
    x: AdmFunctor,
    l: usize,
    zero: Complex2,
}

impl EndpointRule {
    fn fiber(&self, f: &SimplexObj) -> Option<(usize, SimplexObj)> {
        f.preimage(self.l).map(|(p, q)| (p, MonotoneMap::constant(q - p, 0, 0)))
    }
}

impl Rule for EndpointRule {
    fn value(&self, f: &SimplexObj) -> Result<Node> {
        match self.fiber(f) {
            Some((_, c)) => Ok(Node::plain(self.x.value(&c)?)),
            None => Ok(Node::plain(self.zero.clone())),
        }
    }

    fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj, src: &Node, dst: &Node) -> Result<ChainMap2> {
        let (Some((pg, cg)), Some((pf, cf))) = (self.fiber(g), self.fiber(f)) else {
            return Ok(ChainMap2::zero(&src.complex, &dst.complex));
        };
        let psi = MonotoneMap::of((0..=cg.src_dim()).map(|i| theta.apply(i + pg) - pf).collect(), cf.src_dim());
        self.x.map(&cg, &psi, &cf)
    }
}

/// Right Kan extension along the vertex `l` of `[1]`: the value at `f` is
/// `X(f^{-1}(l))`, and zero when the fiber is empty.
pub fn endpoint_kan(x: &AdmFunctor, l: usize) -> Result<AdmFunctor> {
    if x.n() != 0 || l > 1 {
        return Err(Error::Precondition("endpoint extension needs a functor over Δ and l in {0, 1}".into()));
    }
    let v = x.value(&MonotoneMap::constant(0, 0, 0))?;
    let z = ZModule::new(v.modulus(), vec![])?;
    let rule = EndpointRule { x: x.clone(), l, zero: Complex2::zero_differential(&z, &z) };
    Ok(AdmFunctor::with_rule(1, x.d_max(), Domain::All, rule))
}

/// The evaluation `Φ(f) -> E_0(f) + E_1(f)` of a functor over `Δ[1]` into
/// the two endpoint extensions, given by restriction to each block.
pub fn evaluation_map(phi: &AdmFunctor, e0: &AdmFunctor, e1: &AdmFunctor, f: &SimplexObj) -> Result<ChainMap2> {
    let targets = [e0.value(f)?, e1.value(f)?];
    let sum = complex_sum(&[&targets[0], &targets[1]]);
    let src = phi.value(f)?;
    let mut comps = Vec::new();
    for (l, t) in targets.iter().enumerate() {
        comps.push(match f.preimage(l) {
            Some((p, q)) => {
                let theta = MonotoneMap::of((p..=q).collect(), f.src_dim());
                let h = phi.pull(&theta, f)?;
                ChainMap2::new(&src, t, h.f1().clone(), h.f0().clone())?
            }
            None => ChainMap2::zero(&src, t),
        });
    }
    Ok(sum.pair(&comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adm::check_admissible_to;

    fn z(m: i64, f: &[i64]) -> ZModule {
        ZModule::new(m, f.to_vec()).unwrap()
    }

    #[test]
    fn from_complex_is_admissible() {
        let z4 = z(4, &[4]);
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        let x = from_complex(&m);
        assert_eq!(x.value(&MonotoneMap::constant(0, 0, 0)).unwrap(), m);
        let e1 = x.value(&MonotoneMap::constant(1, 0, 0)).unwrap();
        assert_eq!(e1.m1().order(), 16);
        assert_eq!(e1.h1().factors(), m.h1().factors());
        assert_eq!(e1.h0().factors(), m.h0().factors());
        let rep = check_admissible_to(&x, 3);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn endpoint_values() {
        let z2 = z(4, &[2]);
        let m = Complex2::zero_differential(&z2, &z2);
        let x = from_complex(&m);
        let e0 = endpoint_kan(&x, 0).unwrap();
        let c0 = MonotoneMap::constant(2, 1, 0);
        assert_eq!(e0.value(&c0).unwrap(), x.value(&MonotoneMap::constant(2, 0, 0)).unwrap());
        assert_eq!(e0.value(&MonotoneMap::constant(2, 1, 1)).unwrap().order(), 1);
        assert_eq!(e0.value(&MonotoneMap::identity(1)).unwrap(), m);
        let rep = check_admissible_to(&e0, 2);
        assert!(!rep.has(super::super::Clause::Functoriality), "{rep:?}");
    }
}
