//! Property sweeps behind `selfcheck` and the acceptance suite.
//!
//! Each check returns a [`CriterionReport`] listing counterexamples instead
//! of stopping at the first one.

mod suite;

pub use suite::{complexes_up_to_iso, named};

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::adm::{bicomplex_maps, check_admissible, from_complex, segal_report, segal_witness};
use crate::cx2::{dk_normalize, dk_simplicial, Complex2};
use crate::error::Result;
use crate::ext::{ext_group, yoneda_class};
use crate::mutation::{with_mutations, Mutations};
use crate::spl::{enumerate_splittings, transfer_splitting, SplGroupoid};
use crate::twocat::{compose, compose_kan, derived_hom_oracle, hom_category, homotopy_classes, kan_functor_to, truncate, FiberFamily};
use crate::zmod::{enumerate_homs, hom_count, Budget, ZModule};

#[derive(Clone, Debug)]
pub struct Config {
    pub modulus: i64,
    pub max_order: u128,
    /// Exhaustive sweeps instead of the named examples.
    pub full: bool,
    /// Seeds the sampled pairs for the composition checks.
    pub seed: u64,
    pub budget: Budget,
}

impl Default for Config {
    fn default() -> Self {
        Config { modulus: 4, max_order: 8, full: false, seed: 0, budget: Budget::from_env() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub checked: usize,
    pub failures: Vec<Counterexample>,
    pub notes: Vec<String>,
    /// Wall time, left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionReport {
    fn new(id: u8, name: &str) -> Self {
        CriterionReport { id, name: name.to_string(), checked: 0, failures: Vec::new(), notes: Vec::new(), seconds: 0.0 }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, case: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Counterexample { case: case.into(), detail: detail.into() });
    }

    /// Record the outcome of one case; errors count as failures.
    fn check(&mut self, case: impl Into<String>, r: Result<Option<String>>) {
        self.checked += 1;
        match r {
            Ok(None) => {}
            Ok(Some(d)) => self.fail(case, d),
            Err(e) => self.fail(case, format!("error: {e}")),
        }
    }
}

fn timed(mut rep: CriterionReport, start: Instant) -> CriterionReport {
    rep.seconds = start.elapsed().as_secs_f64();
    rep
}

pub fn describe(m: &Complex2) -> String {
    format!("[{:?} -{:?}-> {:?}]", m.m1().factors(), m.d().rows(), m.m0().factors())
}

fn describe_pair(m: &Complex2, n: &Complex2) -> String {
    format!("{} -> {}", describe(m), describe(n))
}

/// The complexes a run looks at.
pub fn population(cfg: &Config) -> Result<Vec<Complex2>> {
    if cfg.full {
        complexes_up_to_iso(cfg.modulus, cfg.max_order, cfg.budget)
    } else {
        Ok(named(cfg.modulus)?.into_iter().map(|(_, c)| c).collect())
    }
}

fn splittings_vs_class(m: &Complex2, budget: Budget) -> Result<Option<String>> {
    let spl = enumerate_splittings(m, budget)?;
    let zero = yoneda_class(m)?.is_zero();
    Ok((spl.is_empty() == zero).then(|| format!("Ext² class zero: {zero}, splittings: {}", spl.pi0())))
}

/// Splittings exist exactly when the Ext² class vanishes.
pub fn criterion1(cs: &[Complex2], budget: Budget) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(1, "splittings exist iff the Ext² class vanishes");
    for m in cs {
        rep.check(describe(m), splittings_vs_class(m, budget));
    }
    timed(rep, start)
}

fn counts_differ(g: &SplGroupoid, ext1: u128, hom: u128) -> Option<String> {
    if g.is_empty() {
        return None;
    }
    if g.pi0() as u128 != ext1 {
        return Some(format!("|π0| = {} but |Ext¹| = {ext1}", g.pi0()));
    }
    g.aut_orders()
        .iter()
        .find(|&&a| a != hom)
        .map(|a| format!("automorphism group of order {a}, |Hom(H0, H1)| = {hom}"))
}

fn gerbe_counts(g: &SplGroupoid, h0: &ZModule, h1: &ZModule) -> Result<Option<String>> {
    Ok(counts_differ(g, ext_group(h0, h1, 1)?.order(), hom_count(h0, h1)))
}

/// Nonempty splitting groupoids have `|Ext¹(H_0, H_1)|` components, each
/// with `|Hom(H_0, H_1)|` automorphisms.
pub fn criterion2(cs: &[Complex2], budget: Budget) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(2, "gerbe cardinalities of splitting groupoids");
    for m in cs {
        let r = enumerate_splittings(m, budget).and_then(|g| gerbe_counts(&g, m.h0(), m.h1()));
        rep.check(describe(m), r);
    }
    timed(rep, start)
}

/// The fiber law and the oracle count, which share the fiber enumeration.
pub fn criteria3_4(cs: &[Complex2], budget: Budget) -> (CriterionReport, CriterionReport) {
    let start = Instant::now();
    let mut r3 = CriterionReport::new(3, "fiber law for morphism groupoids");
    let mut r4 = CriterionReport::new(4, "fiber counts match the derived Hom oracle");
    // composites recur across fibers; their groupoids are computed once
    let mut memo: HashMap<Complex2, SplGroupoid> = HashMap::new();
    let mut fibers = 0usize;
    let mut components = 0u128;
    for m in cs {
        for n in cs {
            let case = describe_pair(m, n);
            let r = (|| -> Result<(Vec<String>, Option<String>)> {
                let mut bad = Vec::new();
                let mut count = 0usize;
                let mut total = 0u128;
                let fam = FiberFamily::new(m, n)?;
                let ext1 = ext_group(m.h0(), n.h1(), 1)?.order();
                let hom = hom_count(m.h0(), n.h1());
                let h1s = enumerate_homs(m.h1(), n.h1(), budget)?;
                let lefts = h1s.iter().map(|f1| fam.left(f1)).collect::<Result<Vec<_>>>()?;
                for f0 in enumerate_homs(m.h0(), n.h0(), budget)? {
                    let right = fam.right(&f0)?;
                    let pre = fam.pull(&f0)?;
                    for (f1, left) in h1s.iter().zip(&lefts) {
                        let ok = left.equals(&right)?;
                        let p = fam.composite(&pre, f1)?.complex().clone();
                        let g = match memo.get(&p) {
                            Some(g) => g.clone(),
                            None => {
                                let g = enumerate_splittings(&p, budget)?;
                                memo.insert(p, g.clone());
                                g
                            }
                        };
                        total += g.pi0() as u128;
                        count += 1;
                        if g.is_empty() == ok {
                            let at = format!("f0 = {:?}, f1 = {:?}", f0.rows(), f1.rows());
                            bad.push(format!("{at}: criterion says {ok}, fiber has {} components", g.pi0()));
                        } else if let Some(d) = counts_differ(&g, ext1, hom) {
                            let at = format!("f0 = {:?}, f1 = {:?}", f0.rows(), f1.rows());
                            bad.push(format!("{at}: {d}"));
                        }
                    }
                }
                let oracle = derived_hom_oracle(m, n)?.order();
                let four = (total != oracle).then(|| format!("Σ|π0| = {total}, oracle order {oracle}"));
                fibers += count;
                components += total;
                Ok((bad, four))
            })();
            r3.checked += 1;
            r4.checked += 1;
            match r {
                Ok((bad, four)) => {
                    if let Some(first) = bad.first() {
                        r3.fail(case.clone(), format!("{first} ({} bad fibers)", bad.len()));
                    }
                    if let Some(d) = four {
                        r4.fail(case, d);
                    }
                }
                Err(e) => {
                    r3.fail(case.clone(), format!("error: {e}"));
                    r4.fail(case, format!("error: {e}"));
                }
            }
        }
    }
    r3.notes.push(format!("{fibers} fibers"));
    r4.notes.push(format!("{components} components in total"));
    (timed(r3, start), timed(r4, start))
}

/// Category axioms of the truncation on the named objects, and the End
/// ring of the twisted complex.
pub fn criterion5(cfg: &Config) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(5, "truncation is a category with the expected End ring");
    let r = (|| -> Result<()> {
        let objs = named(cfg.modulus)?;
        let cs: Vec<Complex2> = objs.iter().map(|(_, c)| c.clone()).collect();
        let tr = truncate(&cs, cfg.budget)?;
        let ax = tr.check_axioms()?;
        rep.checked += ax.identities_checked + ax.triples_checked;
        rep.notes.push(format!("{} unit checks, {} associativity triples", ax.identities_checked, ax.triples_checked));
        for f in ax.failures {
            rep.fail("axioms", f);
        }
        for (i, (name, c)) in objs.iter().enumerate() {
            for (j, (other, d)) in objs.iter().enumerate() {
                rep.checked += 1;
                let o = derived_hom_oracle(c, d)?.order();
                if tr.hom_size(i, j) as u128 != o {
                    rep.fail(format!("Hom({name}, {other})"), format!("{} arrows, oracle order {o}", tr.hom_size(i, j)));
                }
            }
        }
        if let Some(i) = objs.iter().position(|(n, _)| n == "twisted") {
            rep.checked += 1;
            let ring = tr.end_ring(i)?;
            rep.notes.push(format!(
                "End(twisted): {} elements, char 2: {}, square-zero elements: {:?}",
                ring.order, ring.char_two, ring.square_zero
            ));
            if !ring.is_dual_numbers() {
                rep.fail("End(twisted)", format!("{ring:?}"));
            }
        }
        Ok(())
    })();
    if let Err(e) = r {
        rep.fail("truncation", format!("error: {e}"));
    }
    timed(rep, start)
}

/// `compose_kan` agrees with `compose`; the adjunction maps of the Kan
/// functor are isomorphisms.
/// Dimension up to which the adjunction maps of criterion 6 are checked.
const WITNESS_DIM: usize = 2;
/// At most this many surjective quasi-isomorphisms per pair in criterion 7.
const TRANSFER_SAMPLE: usize = 64;
/// Quick mode checks adjunction maps on one composable pair in this many.
const WITNESS_SAMPLE: usize = 16;

pub fn criterion6(cfg: &Config) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(6, "Kan-extension composition agrees with zigzag composition");
    let r = (|| -> Result<()> {
        let objs: Vec<Complex2> = named(cfg.modulus)?.into_iter().map(|(_, c)| c).collect();
        let homs: Vec<Vec<_>> = objs
            .iter()
            .map(|a| objs.iter().map(|b| hom_category(a, b, cfg.budget).and_then(|h| h.morphisms())).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut pairs = Vec::new();
        for i in 0..objs.len() {
            for j in 0..objs.len() {
                for l in 0..objs.len() {
                    for f in &homs[i][j] {
                        for g in &homs[j][l] {
                            pairs.push((f, g));
                        }
                    }
                }
            }
        }
        let mut witnessed = 0;
        let mut objects = 0;
        let idx: Vec<usize> = (0..pairs.len()).collect();
        let chosen: HashSet<usize> = if cfg.full {
            idx.into_iter().collect()
        } else {
            sample(&idx, pairs.len().div_ceil(WITNESS_SAMPLE), cfg.seed).into_iter().collect()
        };
        for (k, (f, g)) in pairs.iter().enumerate() {
            let case = format!("{} then {}", describe_pair(&f.src, &f.dst), describe(&g.dst));
            rep.check(case.clone(), (|| -> Result<Option<String>> {
                let x = compose(f, g)?;
                let y = compose_kan(f, g)?;
                Ok((!x.is_isomorphic(&y)).then(|| format!("zigzag route {x:?}, Kan route {y:?}")))
            })());
            // adjunction maps on a seeded sample, every pair in full mode
            if chosen.contains(&k) {
                witnessed += 1;
                // restriction and extension each cost two dimensions
                rep.check(case, kan_functor_to(f, g, WITNESS_DIM + 4).map(|h| {
                    let w = segal_witness(&h, 1, WITNESS_DIM);
                    objects += w.objects;
                    (!w.passed()).then(|| format!("adjunction: {:?}", w.failures))
                }));
            }
        }
        rep.notes.push(format!("{} composable pairs, adjunction maps checked on {witnessed} ({objects} objects)", pairs.len()));
        Ok(())
    })();
    if let Err(e) = r {
        rep.fail("composition", format!("error: {e}"));
    }
    timed(rep, start)
}

fn admissibility(m: &Complex2) -> Result<Option<String>> {
    let x = from_complex(m);
    let adm = check_admissible(&x);
    if let Some(v) = adm.violations.first() {
        return Ok(Some(format!("{:?} at {}: {}", v.clause, v.object, v.detail)));
    }
    let seg = segal_report(&x, x.d_max());
    if !seg.passed() {
        return Ok(Some(format!("Segal: {:?}", seg.failures)));
    }
    let (a, b) = bicomplex_maps(&x)?;
    if !a.is_iso() || !b.is_iso() {
        return Ok(Some("bicomplex maps are not invertible".into()));
    }
    let k = dk_simplicial(m, x.d_max())?;
    k.check_identities()?;
    if dk_normalize(&k)? != *m || !k.is_segal() {
        return Ok(Some("Dold-Kan round trip is not exact".into()));
    }
    Ok(None)
}

/// Transfer along a surjective quasi-isomorphism `W -> M` is a bijection on
/// components preserving automorphism counts. Returns the number of maps,
/// the number checked and the first violation.
fn transfers(w: &Complex2, m: &Complex2, budget: Budget, seed: u64) -> Result<(usize, usize, Option<String>)> {
    if w.h0() != m.h0() || w.h1() != m.h1() {
        return Ok((0, 0, None));
    }
    let all: Vec<_> = homotopy_classes(w, m)?
        .chain_maps()
        .into_iter()
        .filter(|f| f.is_quasi_iso() && f.is_termwise_surjective())
        .collect();
    let total = all.len();
    let maps = if total > TRANSFER_SAMPLE { sample(&all, TRANSFER_SAMPLE, seed) } else { all };
    if maps.is_empty() {
        return Ok((0, 0, None));
    }
    let src = enumerate_splittings(w, budget)?;
    let dst = enumerate_splittings(m, budget)?;
    for f in &maps {
        let mut hit = vec![false; dst.pi0()];
        for c in src.components() {
            let t = transfer_splitting(f, &c.rep)?;
            let Some(k) = dst.component_of(&t) else {
                return Ok((total, maps.len(), Some("transferred splitting lies in no component".into())));
            };
            if hit[k] {
                return Ok((total, maps.len(), Some(format!("two components transfer to component {k}"))));
            }
            hit[k] = true;
            if dst.components()[k].aut_order != c.aut_order {
                return Ok((total, maps.len(), Some("automorphism counts differ across a transfer".into())));
            }
        }
        if hit.iter().any(|h| !h) {
            return Ok((total, maps.len(), Some("transfer misses a component".into())));
        }
    }
    Ok((total, maps.len(), None))
}

/// Admissibility of `from_complex`, transfer equivalences and Dold-Kan.
pub fn criterion7(cs: &[Complex2], budget: Budget, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(7, "admissibility, transfer and Dold-Kan");
    for m in cs {
        rep.check(describe(m), admissibility(m));
    }
    let (mut maps, mut checked) = (0, 0);
    for w in cs {
        for m in cs {
            match transfers(w, m, budget, seed) {
                Ok((0, _, _)) => {}
                Ok((k, c, d)) => {
                    maps += k;
                    checked += c;
                    rep.check(describe_pair(w, m), Ok(d));
                }
                Err(e) => rep.check(describe_pair(w, m), Err(e)),
            }
        }
    }
    rep.notes.push(format!("{maps} surjective quasi-isomorphisms, {checked} transferred"));
    timed(rep, start)
}

/// Run criteria 1 to 4 under each mutation; each must produce a failure.
pub fn criterion8(cfg: &Config) -> CriterionReport {
    let start = Instant::now();
    let mut rep = CriterionReport::new(8, "mutations break criteria 1-4");
    let cs = match named(cfg.modulus) {
        Ok(v) => v.into_iter().map(|(_, c)| c).collect::<Vec<_>>(),
        Err(e) => {
            rep.fail("population", e.to_string());
            return timed(rep, start);
        }
    };
    let muts = [
        ("flipped sign in post-composition", Mutations { flip_post_sign: true, ..Default::default() }),
        ("dropped side condition", Mutations { drop_side_condition: true, ..Default::default() }),
    ];
    for (name, mu) in muts {
        rep.checked += 1;
        // stop at the first broken criterion: under the side-condition
        // mutation every later check runs the brute-force enumeration
        let broken = with_mutations(mu, || {
            let r1 = criterion1(&cs, cfg.budget);
            if !r1.passed() {
                return Some(r1);
            }
            let r2 = criterion2(&cs, cfg.budget);
            if !r2.passed() {
                return Some(r2);
            }
            let (r3, r4) = criteria3_4(&cs, cfg.budget);
            [r3, r4].into_iter().find(|r| !r.passed())
        });
        match broken {
            Some(r) => {
                let c = &r.failures[0];
                rep.notes.push(format!("{name}: breaks criterion {} at {}: {}", r.id, c.case, c.detail));
            }
            None => {
                let (r5, r6) = with_mutations(mu, || (criterion5(cfg), criterion6(cfg)));
                let elsewhere: Vec<String> = [&r5, &r6]
                    .iter()
                    .filter(|r| !r.passed())
                    .map(|r| format!("criterion {} ({})", r.id, r.failures[0].detail))
                    .collect();
                rep.fail(name, format!("criteria 1-4 all pass under the mutation; detected by: {elsewhere:?}"));
            }
        }
    }
    timed(rep, start)
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfcheckReport {
    pub modulus: i64,
    pub max_order: u128,
    pub level: String,
    pub population: usize,
    pub criteria: Vec<CriterionReport>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionReport::passed)
    }
}

/// All eight criteria. In quick mode the population is the named complexes.
pub fn selfcheck(cfg: &Config) -> Result<SelfcheckReport> {
    let cs = population(cfg)?;
    let mut criteria = vec![criterion1(&cs, cfg.budget), criterion2(&cs, cfg.budget)];
    let (r3, r4) = criteria3_4(&cs, cfg.budget);
    criteria.extend([r3, r4, criterion5(cfg), criterion6(cfg), criterion7(&cs, cfg.budget, cfg.seed), criterion8(cfg)]);
    Ok(SelfcheckReport {
        modulus: cfg.modulus,
        max_order: cfg.max_order,
        level: if cfg.full { "full" } else { "quick" }.to_string(),
        population: cs.len(),
        criteria,
    })
}

/// A seeded sample of `k` items, in their original order.
pub fn sample<T: Clone>(items: &[T], k: usize, seed: u64) -> Vec<T> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.shuffle(&mut StdRng::seed_from_u64(seed));
    let mut keep: Vec<usize> = idx.into_iter().take(k).collect();
    keep.sort_unstable();
    keep.into_iter().map(|i| items[i].clone()).collect()
}
