//! Admissible functors on truncated simplex categories `Δ[n]`, with values
//! in length-2 complexes.
//!
//! A functor is stored as a rule evaluated lazily: values are cached per
//! object, structure maps are computed on demand for any arrow. Arrows are
//! contravariant: for `θ: ⟨[m'], g⟩ -> ⟨[m], f⟩` (so `f ∘ θ = g`) the
//! functor gives `F(f) -> F(g)`.

mod kan;
mod path;

pub use kan::{alpha_star, beta_shriek, bicomplex_maps, glue, inflate, segal_report, segal_witness, SegalReport};
pub use path::{endpoint_kan, evaluation_map, from_complex, from_complex_to, morphism_functor, morphism_functor_to};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::cx2::{ChainMap2, Complex2, ComplexPullback};
use crate::error::{Error, Result};
use crate::simplex::{in_image_b_l_n, MonotoneMap, SimplexObj};
use crate::zmod::direct_sum;

/// Default truncation dimension.
pub const DEFAULT_D_MAX: usize = 4;

/// The full subcategory of `Δ[n]` a functor is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    All,
    /// `(Δ[n])_l`.
    Lower(usize),
    /// `(Δ[n])_{l⋄}`.
    Diamond(usize),
}

impl Domain {
    pub fn contains(&self, f: &SimplexObj) -> bool {
        match *self {
            Domain::All => true,
            Domain::Lower(l) => in_image_b_l_n(f, l),
            Domain::Diamond(l) => in_image_b_l_n(f, l) || f.preimage(l).is_some(),
        }
    }
}

/// Extra data kept next to a value, for rules that build values as limits
/// or colimits.
#[derive(Clone, Debug)]
pub(crate) enum Aux {
    None,
    Pullback(ComplexPullback),
    /// `F(f) = coker(...)`, a quotient of the value at `top`.
    Quotient { q: ChainMap2, top: SimplexObj },
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub complex: Complex2,
    pub aux: Aux,
}

impl Node {
    pub fn plain(complex: Complex2) -> Self {
        Node { complex, aux: Aux::None }
    }
}

pub(crate) trait Rule: Send + Sync {
    fn value(&self, f: &SimplexObj) -> Result<Node>;
    fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj, src: &Node, dst: &Node) -> Result<ChainMap2>;
}

type ValueFn = dyn Fn(&SimplexObj) -> Result<Complex2> + Send + Sync;
type MapFn = dyn Fn(&SimplexObj, &MonotoneMap, &SimplexObj, &Complex2, &Complex2) -> Result<ChainMap2> + Send + Sync;

struct FnRule {
    value: Box<ValueFn>,
    map: Box<MapFn>,
}

impl Rule for FnRule {
    fn value(&self, f: &SimplexObj) -> Result<Node> {
        (self.value)(f).map(Node::plain)
    }

    fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj, src: &Node, dst: &Node) -> Result<ChainMap2> {
        (self.map)(g, theta, f, &src.complex, &dst.complex)
    }
}

/// A functor `(D)^o -> C_[0,1]` for a full subcategory `D` of `Δ[n]`,
/// truncated at dimension `d_max`.
#[derive(Clone)]
pub struct AdmFunctor {
    n: usize,
    d_max: usize,
    domain: Domain,
    rule: Arc<dyn Rule>,
    cache: Arc<Mutex<HashMap<SimplexObj, Arc<Node>>>>,
}

impl fmt::Debug for AdmFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdmFunctor(Δ[{}], {:?}, d_max {})", self.n, self.domain, self.d_max)
    }
}

impl AdmFunctor {
    pub(crate) fn with_rule(n: usize, d_max: usize, domain: Domain, rule: impl Rule + 'static) -> Self {
        AdmFunctor { n, d_max, domain, rule: Arc::new(rule), cache: Arc::new(Mutex::new(HashMap::new())) }
    }

    /// A functor given by explicit value and arrow rules. The arrow rule
    /// receives `(g, θ, f, F(f), F(g))`.
    pub fn from_rules<V, M>(n: usize, d_max: usize, domain: Domain, value: V, map: M) -> Self
    where
        V: Fn(&SimplexObj) -> Result<Complex2> + Send + Sync + 'static,
        M: Fn(&SimplexObj, &MonotoneMap, &SimplexObj, &Complex2, &Complex2) -> Result<ChainMap2> + Send + Sync + 'static,
    {
        Self::with_rule(n, d_max, domain, FnRule { value: Box::new(value), map: Box::new(map) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn contains(&self, f: &SimplexObj) -> bool {
        f.dst_dim() == self.n && f.src_dim() <= self.d_max && self.domain.contains(f)
    }

    /// Domain objects up to dimension `dim`.
    pub fn objects(&self, dim: usize) -> Vec<SimplexObj> {
        (0..=dim.min(self.d_max))
            .flat_map(|m| MonotoneMap::all(m, self.n))
            .filter(|f| self.domain.contains(f))
            .collect()
    }

    fn check_obj(&self, f: &SimplexObj) -> Result<()> {
        if self.contains(f) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{f:?} is outside the domain of {self:?}")))
        }
    }

    pub(crate) fn node(&self, f: &SimplexObj) -> Result<Arc<Node>> {
        self.check_obj(f)?;
        if let Some(v) = self.cache.lock().expect("cache lock").get(f) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.rule.value(f)?);
        self.cache.lock().expect("cache lock").insert(f.clone(), v.clone());
        Ok(v)
    }

    pub fn value(&self, f: &SimplexObj) -> Result<Complex2> {
        Ok(self.node(f)?.complex.clone())
    }

    /// `F(θ): F(f) -> F(g)` for `θ: g -> f`.
    pub fn map(&self, g: &SimplexObj, theta: &MonotoneMap, f: &SimplexObj) -> Result<ChainMap2> {
        if f.after(theta) != *g {
            return Err(Error::Mismatch(format!("{theta:?} is not an arrow {g:?} -> {f:?}")));
        }
        let src = self.node(f)?;
        let dst = self.node(g)?;
        let h = self.rule.map(g, theta, f, &src, &dst)?;
        if h.src() != &src.complex || h.dst() != &dst.complex {
            return Err(Error::Internal("structure map has the wrong endpoints".into()));
        }
        Ok(h)
    }

    /// `F(θ)` for `θ` into `f`, with source `f ∘ θ`.
    pub fn pull(&self, theta: &MonotoneMap, f: &SimplexObj) -> Result<ChainMap2> {
        self.map(&f.after(theta), theta, f)
    }

    /// `F(f) -> F(⟨[0], f(i)⟩)`.
    pub fn vertex_map(&self, f: &SimplexObj, i: usize) -> Result<ChainMap2> {
        self.pull(&MonotoneMap::of(vec![i], f.src_dim()), f)
    }
}

/// Which requirement a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Clause {
    Functoriality,
    /// Degree-1 part is the sum over vertices.
    VertexSum,
    /// Homology inverts special arrows.
    Special,
    /// Maps to the initial vertex are surjective.
    Surjective,
    Evaluation,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Violation {
    pub clause: Clause,
    pub object: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct AdmReport {
    pub objects: usize,
    pub arrows: usize,
    pub violations: Vec<Violation>,
}

impl AdmReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    fn fail(&mut self, clause: Clause, f: &SimplexObj, detail: impl Into<String>) {
        self.violations.push(Violation { clause, object: format!("{f:?}"), detail: detail.into() });
    }
}

/// Faces and degeneracies into `f` that stay in the domain, as `(θ, f ∘ θ)`.
pub(crate) fn generating_arrows(fun: &AdmFunctor, f: &SimplexObj, dim: usize) -> Vec<(MonotoneMap, SimplexObj)> {
    let m = f.src_dim();
    let mut out = Vec::new();
    if m > 0 {
        for i in 0..=m {
            out.push(MonotoneMap::face(m, i));
        }
    }
    if m < dim {
        for i in 0..=m {
            out.push(MonotoneMap::degeneracy(m, i));
        }
    }
    out.into_iter()
        .map(|t| {
            let g = f.after(&t);
            (t, g)
        })
        .filter(|(_, g)| fun.contains(g) && g.src_dim() <= dim)
        .collect()
}

/// Check functoriality on composable pairs of generating arrows, the
/// vertex-sum isomorphism in degree 1, and specialness of homology, on
/// objects up to dimension `dim`.
pub fn check_admissible_to(fun: &AdmFunctor, dim: usize) -> AdmReport {
    let mut rep = AdmReport::default();
    for f in fun.objects(dim) {
        rep.objects += 1;
        if let Err(e) = check_object(fun, &f, dim, &mut rep) {
            rep.fail(Clause::Evaluation, &f, e.to_string());
        }
    }
    rep
}

pub fn check_admissible(fun: &AdmFunctor) -> AdmReport {
    check_admissible_to(fun, fun.d_max())
}

fn check_object(fun: &AdmFunctor, f: &SimplexObj, dim: usize, rep: &mut AdmReport) -> Result<()> {
    let v = fun.value(f)?;
    let m = f.src_dim();
    if fun.pull(&MonotoneMap::identity(m), f)? != ChainMap2::identity(&v) {
        rep.fail(Clause::Functoriality, f, "identity is not preserved");
    }
    for (t, g) in generating_arrows(fun, f, dim) {
        rep.arrows += 1;
        let ft = fun.map(&g, &t, f)?;
        for (u, h) in generating_arrows(fun, &g, dim) {
            let lhs = fun.map(&h, &t.after(&u), f)?;
            let rhs = fun.map(&h, &u, &g)?.after(&ft);
            if lhs != rhs {
                rep.fail(Clause::Functoriality, f, format!("F({t:?} ∘ {u:?}) differs from the composite"));
            }
        }
        if t.apply(0) == 0 && !ft.is_quasi_iso() {
            rep.fail(Clause::Special, f, format!("special arrow {t:?} is not a quasi-isomorphism"));
        }
    }
    // degree 1 is the sum of the vertex values
    let verts: Vec<ChainMap2> = (0..=m).map(|i| fun.vertex_map(f, i)).collect::<Result<_>>()?;
    let mods: Vec<_> = verts.iter().map(|h| h.dst().m1().clone()).collect();
    let sum = direct_sum(&mods.iter().collect::<Vec<_>>());
    let total = verts
        .iter()
        .enumerate()
        .map(|(i, h)| sum.inj[i].after(h.f1()))
        .reduce(|a, b| a.plus(&b))
        .expect("at least one vertex");
    if !total.is_iso() {
        rep.fail(Clause::VertexSum, f, "degree-1 part is not the sum of the vertex values");
    }
    let s = &verts[0];
    if !s.is_quasi_iso() {
        rep.fail(Clause::Special, f, "map to the initial vertex is not a quasi-isomorphism");
    } else if !s.is_termwise_surjective() {
        rep.fail(Clause::Surjective, f, "map to the initial vertex is not surjective");
    }
    Ok(())
}
