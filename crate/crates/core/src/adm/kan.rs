//! Gluing over `(Δ[2])_1`, the extensions `α_*` (V-diagram pullbacks) and
//! `β_!` (cokernels over tight factorizations), and the Segal checks.

use super::{AdmFunctor, Aux, Domain, Node, Rule};
use crate::cx2::{complex_cokernel, complex_pullback, descend, ChainMap2, ComplexPullback};
use crate::error::{Error, Result};
use crate::simplex::{in_image_b_l_n, tight_factorizations, v_diagram, MonotoneMap, SimplexObj};
use crate::zmod::{factor_through_injection, ModMap};

fn shift(f: &SimplexObj, by: usize, dst: usize) -> SimplexObj {
    MonotoneMap::of(f.values().iter().map(|&v| v - by).collect(), dst)
}

struct GlueRule {
    left: AdmFunctor,
    right: AdmFunctor,
}

impl Rule for GlueRule {
    fn value(&self, f: &SimplexObj) -> Result<Node> {
        if f.values().iter().all(|&v| v <= 1) {
            Ok(Node::plain(self.left.value(&shift(f, 0, 1))?))
        } else {
            Ok(Node::plain(self.right.value(&shift(f, 1, 1))?))
        }
    }

    fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj, _: &Node, _: &Node) -> Result<ChainMap2> {
        if f.values().iter().all(|&v| v <= 1) {
            self.left.map(&shift(g, 0, 1), theta, &shift(f, 0, 1))
        } else {
            self.right.map(&shift(g, 1, 1), theta, &shift(f, 1, 1))
        }
    }
}

/// Glue functors over the edges `01` and `12` of `[2]` into a functor over
/// `(Δ[2])_1`. They must agree on the nose over the shared vertex.
pub fn glue(f: &AdmFunctor, g: &AdmFunctor) -> Result<AdmFunctor> {
    if f.n() != 1 || g.n() != 1 {
        return Err(Error::Precondition("gluing needs two functors over Δ[1]".into()));
    }
    let d_max = f.d_max().min(g.d_max());
    for k in 0..=d_max {
        let a = MonotoneMap::constant(k, 1, 1);
        let b = MonotoneMap::constant(k, 1, 0);
        if f.value(&a)? != g.value(&b)? {
            return Err(Error::OverlapMismatch(format!("values over the shared vertex differ in dimension {k}")));
        }
        if k > 0 {
            for i in 0..=k {
                let t = MonotoneMap::face(k, i);
                if f.pull(&t, &a)? != g.pull(&t, &b)? {
                    return Err(Error::OverlapMismatch(format!("face {i} over the shared vertex differs in dimension {k}")));
                }
            }
        }
    }
    let rule = GlueRule { left: f.clone(), right: g.clone() };
    Ok(AdmFunctor::with_rule(2, d_max, Domain::Lower(1), rule))
}

struct AlphaRule {
    inner: AdmFunctor,
    l: usize,
}

impl AlphaRule {
    fn pullback(node: &Node) -> &ComplexPullback {
        match &node.aux {
            Aux::Pullback(p) => p,
            _ => unreachable!("objects outside the lower part carry their pullback"),
        }
    }
}

impl Rule for AlphaRule {
    fn value(&self, f: &SimplexObj) -> Result<Node> {
        if in_image_b_l_n(f, self.l) {
            return Ok(Node::plain(self.inner.value(f)?));
        }
        let v = v_diagram(f, self.l)?;
        let a = self.inner.map(&v.middle, &v.middle_to_left, &v.left)?;
        let b = self.inner.map(&v.middle, &v.middle_to_right, &v.right)?;
        let p = complex_pullback(&a, &b)?;
        Ok(Node { complex: p.complex.clone(), aux: Aux::Pullback(p) })
    }

    fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj, src: &Node, dst: &Node) -> Result<ChainMap2> {
        let l = self.l;
        if in_image_b_l_n(f, l) {
            return self.inner.map(g, theta, f);
        }
        let vf = v_diagram(f, l)?;
        let pf = Self::pullback(src);
        let to_right = |i: usize, off: usize| theta.apply(i + off) - vf.p;
        if in_image_b_l_n(g, l) {
            if g.values().iter().all(|&v| v <= l) {
                let psi = MonotoneMap::of(theta.values().to_vec(), vf.q);
                return Ok(self.inner.map(g, &psi, &vf.left)?.after(&pf.pa));
            }
            let psi = MonotoneMap::of((0..=g.src_dim()).map(|i| to_right(i, 0)).collect(), vf.right.src_dim());
            return Ok(self.inner.map(g, &psi, &vf.right)?.after(&pf.pb));
        }
        let vg = v_diagram(g, l)?;
        let psi_l = MonotoneMap::of(theta.values()[..=vg.q].to_vec(), vf.q);
        let psi_r = MonotoneMap::of((0..=vg.right.src_dim()).map(|i| to_right(i, vg.p)).collect(), vf.right.src_dim());
        let x = self.inner.map(&vg.left, &psi_l, &vf.left)?.after(&pf.pa);
        let y = self.inner.map(&vg.right, &psi_r, &vf.right)?.after(&pf.pb);
        Self::pullback(dst).induced(&x, &y)
    }
}

/// Right Kan extension from `(Δ[n])_l` to `(Δ[n])_{l⋄}`: unchanged on the
/// lower part, the pullback over the V-diagram elsewhere.
pub fn alpha_star(f: &AdmFunctor) -> Result<AdmFunctor> {
    let Domain::Lower(l) = f.domain() else {
        return Err(Error::Precondition("alpha_star needs a functor over (Δ[n])_l".into()));
    };
    Ok(AdmFunctor::with_rule(f.n(), f.d_max(), Domain::Diamond(l), AlphaRule { inner: f.clone(), l }))
}

struct BetaRule {
    inner: AdmFunctor,
    l: usize,
}

impl BetaRule {
    fn covered(&self, f: &SimplexObj) -> bool {
        Domain::Diamond(self.l).contains(f)
    }

    fn quotient(node: &Node) -> (&ChainMap2, &SimplexObj) {
        match &node.aux {
            Aux::Quotient { q, top } => (q, top),
            _ => unreachable!("uncovered objects carry their quotient"),
        }
    }
}

impl Rule for BetaRule {
    fn value(&self, f: &SimplexObj) -> Result<Node> {
        if self.covered(f) {
            return Ok(Node::plain(self.inner.value(f)?));
        }
        let t = tight_factorizations(f, self.l, 1)?;
        let d = |i: usize| -> Result<ChainMap2> {
            let nu = t[0].nu(&MonotoneMap::face(1, i), &t[1]);
            self.inner.map(&t[0].obj, &nu, &t[1].obj)
        };
        let (c, q) = complex_cokernel(&d(0)?.minus(&d(1)?))?;
        Ok(Node { complex: c, aux: Aux::Quotient { q, top: t[0].obj.clone() } })
    }

    fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj, src: &Node, dst: &Node) -> Result<ChainMap2> {
        let l = self.l;
        match (self.covered(f), self.covered(g)) {
            (true, true) => self.inner.map(g, theta, f),
            (true, false) => {
                let (qg, top) = Self::quotient(dst);
                let (p, _) = f.preimage(l).ok_or_else(|| Error::Internal("covered source misses l".into()))?;
                let j = g.values().iter().filter(|&&v| v < l).count();
                let phi = (0..=g.src_dim() + 1)
                    .map(|i| if i < j { theta.apply(i) } else if i == j { p } else { theta.apply(i - 1) })
                    .collect();
                let phi = MonotoneMap::of(phi, f.src_dim());
                Ok(qg.after(&self.inner.map(top, &phi, f)?))
            }
            (false, true) => {
                let (qf, top) = Self::quotient(src);
                let t = tight_factorizations(f, l, 0)?;
                let h = self.inner.map(g, &t[0].e.after(theta), top)?;
                descend(&h, qf)
            }
            (false, false) => {
                let (qf, top_f) = Self::quotient(src);
                let (qg, top_g) = Self::quotient(dst);
                let tf = &tight_factorizations(f, l, 0)?[0];
                let tg = &tight_factorizations(g, l, 0)?[0];
                let plus = (0..=g.src_dim() + 1)
                    .map(|i| {
                        if i < tg.j {
                            tf.e.apply(theta.apply(i))
                        } else if i == tg.j {
                            tf.j
                        } else {
                            tf.e.apply(theta.apply(i - 1))
                        }
                    })
                    .collect();
                let plus = MonotoneMap::of(plus, f.src_dim() + 1);
                let h = qg.after(&self.inner.map(top_g, &plus, top_f)?);
                descend(&h, qf)
            }
        }
    }
}

/// Left Kan extension from `(Δ[n])_{l⋄}` to `Δ[n]`: at an object missing `l`,
/// the cokernel of `d_0 - d_1` on the tight factorizations with `k = 1, 0`.
pub fn beta_shriek(f: &AdmFunctor) -> Result<AdmFunctor> {
    let Domain::Diamond(l) = f.domain() else {
        return Err(Error::Precondition("beta_shriek needs a functor over (Δ[n])_{l⋄}".into()));
    };
    // the tight factorizations add two dimensions
    let d_max = f.d_max().saturating_sub(2);
    Ok(AdmFunctor::with_rule(f.n(), d_max, Domain::All, BetaRule { inner: f.clone(), l }))
}

struct RestrictRule {
    inner: AdmFunctor,
}

impl Rule for RestrictRule {
    fn value(&self, f: &SimplexObj) -> Result<Node> {
        Ok(Node::plain(self.inner.value(f)?))
    }

    fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj, _: &Node, _: &Node) -> Result<ChainMap2> {
        self.inner.map(g, theta, f)
    }
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct SegalReport {
    pub objects: usize,
    pub failures: Vec<String>,
}

impl SegalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Restrict `H` to `(Δ[n])_l`, extend back by `β_! α_*`, and check that the
/// adjunction maps are isomorphisms on objects up to dimension `dim`.
pub fn segal_witness(h: &AdmFunctor, l: usize, dim: usize) -> SegalReport {
    let mut rep = SegalReport::default();
    if let Err(e) = witness(h, l, dim, &mut rep) {
        rep.failures.push(e.to_string());
    }
    rep
}

fn witness(h: &AdmFunctor, l: usize, dim: usize, rep: &mut SegalReport) -> Result<()> {
    if h.domain() != Domain::All || l > h.n() {
        return Err(Error::Precondition("segal_witness needs a functor over Δ[n] and l <= n".into()));
    }
    let lower = AdmFunctor::with_rule(h.n(), h.d_max(), Domain::Lower(l), RestrictRule { inner: h.clone() });
    let a = alpha_star(&lower)?;
    let b = beta_shriek(&a)?;
    let unit = |f: &SimplexObj| -> Result<ChainMap2> {
        let v = v_diagram(f, l)?;
        let node = a.node(f)?;
        let Aux::Pullback(p) = &node.aux else { unreachable!("upper objects carry their pullback") };
        p.induced(&h.map(&v.left, &v.left_to_obj, f)?, &h.map(&v.right, &v.right_to_obj, f)?)
    };
    for f in h.objects(dim.min(b.d_max())) {
        rep.objects += 1;
        let ok = if in_image_b_l_n(&f, l) {
            b.value(&f)? == h.value(&f)?
        } else if f.preimage(l).is_some() {
            unit(&f)?.is_iso()
        } else {
            let t = &tight_factorizations(&f, l, 0)?[0];
            let node = b.node(&f)?;
            let Aux::Quotient { q, .. } = &node.aux else { unreachable!("uncovered objects carry their quotient") };
            let back = h.map(&f, &t.e, &t.obj)?.after(&unit(&t.obj)?.inverse()?);
            descend(&back, q)?.is_iso()
        };
        if !ok {
            rep.failures.push(format!("adjunction map at {f:?} is not an isomorphism"));
        }
    }
    Ok(())
}

/// The maps `a: C_1(M_1) -> C_0(M_1)` and `b: C_1(M_1) -> C_1(M_0)` of the
/// bicomplex of a functor over `Δ`, with `C_1 = ker d_1`.
pub fn bicomplex_maps(x: &AdmFunctor) -> Result<(ModMap, ModMap)> {
    if x.n() != 0 {
        return Err(Error::Precondition("the bicomplex is defined for functors over Δ".into()));
    }
    let e = MonotoneMap::constant(1, 0, 0);
    let d0 = x.pull(&MonotoneMap::face(1, 0), &e)?;
    let d1 = x.pull(&MonotoneMap::face(1, 1), &e)?;
    let (_, k1) = d1.f1().kernel();
    let (_, k0) = d1.f0().kernel();
    let a = d0.f1().after(&k1);
    let b = factor_through_injection(&d0.src().d().after(&k1), &k0)?;
    Ok((a, b))
}

/// Segal maps `X([k]) -> X([1]) x_{X([0])} X([k-1])` for `2 <= k <= dim`.
pub fn segal_report(x: &AdmFunctor, dim: usize) -> SegalReport {
    let mut rep = SegalReport::default();
    for k in 2..=dim.min(x.d_max()) {
        rep.objects += 1;
        let r = (|| -> Result<bool> {
            let top = MonotoneMap::constant(k, 0, 0);
            let edge = MonotoneMap::constant(1, 0, 0);
            let rest = MonotoneMap::constant(k - 1, 0, 0);
            let a = x.vertex_map(&edge, 1)?;
            let b = x.vertex_map(&rest, 0)?;
            let p = complex_pullback(&a, &b)?;
            let head = x.pull(&MonotoneMap::s_embed(1, k), &top)?;
            let tail = x.pull(&MonotoneMap::t_embed(1, k), &top)?;
            Ok(p.induced(&head, &tail)?.is_iso())
        })();
        match r {
            Ok(true) => {}
            Ok(false) => rep.failures.push(format!("Segal map at [{k}] is not an isomorphism")),
            Err(e) => rep.failures.push(format!("[{k}]: {e}")),
        }
    }
    rep
}

struct InflateRule {
    inner: AdmFunctor,
}

impl Rule for InflateRule {
    fn value(&self, f: &SimplexObj) -> Result<Node> {
        Ok(Node::plain(self.inner.value(&MonotoneMap::constant(f.src_dim(), 0, 0))?))
    }

    fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj, _: &Node, _: &Node) -> Result<ChainMap2> {
        let c = |h: &SimplexObj| MonotoneMap::constant(h.src_dim(), 0, 0);
        self.inner.map(&c(g), theta, &c(f))
    }
}

/// Pull a functor over `Δ` back along `Δ[n] -> Δ`.
pub fn inflate(x: &AdmFunctor, n: usize) -> Result<AdmFunctor> {
    if x.n() != 0 {
        return Err(Error::Precondition("inflate needs a functor over Δ".into()));
    }
    Ok(AdmFunctor::with_rule(n, x.d_max(), Domain::All, InflateRule { inner: x.clone() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adm::{check_admissible_to, from_complex, morphism_functor, Clause};
    use crate::cx2::Complex2;
    use crate::zmod::ZModule;

    fn z(m: i64, f: &[i64]) -> ZModule {
        ZModule::new(m, f.to_vec()).unwrap()
    }

    fn path_zigzag(m: &Complex2) -> AdmFunctor {
        let x = from_complex(m);
        let e = MonotoneMap::constant(1, 0, 0);
        let g = x.vertex_map(&e, 0).unwrap();
        let f = x.vertex_map(&e, 1).unwrap();
        morphism_functor(&g, &f).unwrap()
    }

    #[test]
    fn bicomplex_and_segal_for_from_complex() {
        let z4 = z(4, &[4]);
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        let x = from_complex(&m);
        let (a, b) = bicomplex_maps(&x).unwrap();
        assert!(a.is_iso() && b.is_iso());
        assert!(segal_report(&x, 4).passed());
    }

    #[test]
    fn morphism_functor_is_admissible() {
        let z4 = z(4, &[4]);
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        let phi = path_zigzag(&m);
        let rep = check_admissible_to(&phi, 3);
        assert!(rep.passed(), "{:?}", rep.violations.first());
    }

    #[test]
    fn kan_round_trip_on_glued_functor() {
        let z2 = z(4, &[2]);
        let m = Complex2::zero_differential(&z2, &z2);
        let phi = path_zigzag(&m);
        let glued = glue(&phi, &phi).unwrap();
        assert!(check_admissible_to(&glued, 2).passed());
        let a = alpha_star(&glued).unwrap();
        let id2 = MonotoneMap::identity(2);
        let v = a.value(&id2).unwrap();
        assert_eq!(v.m1().order(), 8);
        assert_eq!(v.h1().factors(), m.h1().factors());
        let rep = check_admissible_to(&a, 3);
        assert!(rep.passed(), "{:?}", rep.violations.first());
        let b = beta_shriek(&a).unwrap();
        let long = MonotoneMap::of(vec![0, 2], 2);
        let e = b.value(&long).unwrap();
        assert_eq!(e.m1().order(), 4);
        assert_eq!(e.h0().factors(), m.h0().factors());
        let rep = check_admissible_to(&b, 2);
        assert!(rep.passed(), "{:?}", rep.violations.first());
    }

    #[test]
    fn witness_on_inflated_complex() {
        let z4 = z(4, &[4]);
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        let h = inflate(&from_complex(&m), 2).unwrap();
        assert!(check_admissible_to(&h, 2).passed());
        let rep = segal_witness(&h, 1, 2);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn engineered_violations() {
        let z2 = z(4, &[2]);
        let z4 = z(4, &[4]);
        let c = Complex2::zero_differential(&z2, &z2);
        // constant nonzero M_1: degree 1 is not a sum over vertices
        let constant = AdmFunctor::from_rules(
            0,
            3,
            Domain::All,
            move |_| Ok(c.clone()),
            |_, _, _, s, t| Ok(ChainMap2::new(s, t, ModMap::identity(s.m1()), ModMap::identity(s.m0()))?),
        );
        let rep = check_admissible_to(&constant, 2);
        assert!(rep.has(Clause::VertexSum) && !rep.has(Clause::Functoriality));
        // H_0 varies with the dimension: special arrows are not inverted
        let x = from_complex(&Complex2::zero_differential(&z2, &z2));
        let bump = AdmFunctor::from_rules(
            0,
            2,
            Domain::All,
            {
                let x = x.clone();
                let z4 = z4.clone();
                move |f| {
                    let v = x.value(f)?;
                    if f.src_dim() == 0 {
                        return Ok(v);
                    }
                    let sum = crate::zmod::direct_sum2(v.m0(), &z4);
                    Ok(Complex2::new(sum.inj[0].after(v.d())))
                }
            },
            move |g, t, f, s, d| {
                let h = x.map(g, t, f)?;
                let lift = |m: &ModMap, src: &ZModule, dst: &ZModule| -> ModMap {
                    let into = if dst == h.dst().m0() { ModMap::identity(dst) } else { crate::zmod::direct_sum2(h.dst().m0(), &z(4, &[4])).inj[0].clone() };
                    let out = if src == h.src().m0() { ModMap::identity(src) } else { crate::zmod::direct_sum2(h.src().m0(), &z(4, &[4])).proj[0].clone() };
                    into.after(m).after(&out)
                };
                ChainMap2::new(s, d, h.f1().clone(), lift(h.f0(), s.m0(), d.m0()))
            },
        );
        let rep = check_admissible_to(&bump, 2);
        assert!(rep.has(Clause::Special), "{rep:?}");
    }
}
