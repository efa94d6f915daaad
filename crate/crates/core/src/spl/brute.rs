//! Exhaustive search over all middle modules and all pairs `(a, b)`.

use super::groupoid::{Component, SplGroupoid};
use super::{aut_order, find_morphism, is_splitting, Splitting};
use crate::cx2::Complex2;
use crate::error::Result;
use crate::mutation;
use crate::zmod::{elements, enumerate_homs, modules_of_order, Budget, HomSpace, LinearOp, ZModule};

/// Middle modules to search. With the side condition `|M~| = |M_1| |H_0|`;
/// without it, every order up to `|M_1| |M_0|` is searched.
fn candidate_middles(m: &Complex2) -> Vec<ZModule> {
    let exact = m.m1().order() * m.h0().order();
    if !mutation::active().drop_side_condition {
        return modules_of_order(m.modulus(), exact);
    }
    let top = m.m1().order() * m.m0().order();
    (1..=top).filter(|n| top % n == 0).flat_map(|n| modules_of_order(m.modulus(), n)).collect()
}

/// All splittings, grouped into components by the existence of morphisms.
pub fn enumerate_splittings_brute(m: &Complex2, budget: Budget) -> Result<SplGroupoid> {
    let mut objects: Vec<Splitting> = Vec::new();
    for mtil in candidate_middles(m) {
        let homs_b = HomSpace::new(&mtil, m.m0());
        let d = m.d().clone();
        for a in enumerate_homs(m.m1(), &mtil, budget)? {
            if !a.is_injective() {
                continue;
            }
            let aa = a.clone();
            let op = LinearOp::new(vec![homs_b.clone()], vec![HomSpace::new(m.m1(), m.m0())], move |f| {
                vec![f[0].after(&aa)]
            });
            let Some(p) = op.solve(&[d.clone()]) else { continue };
            let (k, incl) = op.kernel();
            budget.check("splitting candidates", k.order() * objects.len().max(1) as u128)?;
            for x in elements(&k) {
                let b = p[0].plus(&op.decode(&incl.apply(&x))[0]);
                let s = Splitting::new(a.clone(), b);
                if is_splitting(m, &s) {
                    objects.push(s);
                }
            }
        }
    }
    let n = objects.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let symmetric = !mutation::active().drop_side_condition;
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n {
        if symmetric {
            // isomorphism is an equivalence relation: comparing with one member per class suffices
            if let Some(&r) = roots.iter().find(|&&r| find_morphism(&objects[i], &objects[r]).is_some()) {
                parent[i] = r;
            } else {
                roots.push(i);
            }
        } else {
            for j in 0..i {
                if find(&mut parent, i) == find(&mut parent, j) {
                    continue;
                }
                if find_morphism(&objects[i], &objects[j]).is_some() || find_morphism(&objects[j], &objects[i]).is_some() {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut firsts: Vec<usize> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match firsts.iter().position(|&f| f == r) {
            Some(k) => sizes[k] += 1,
            None => {
                firsts.push(r);
                sizes.push(1);
            }
        }
    }
    let components = firsts
        .iter()
        .zip(sizes)
        .map(|(&r, size)| Component { rep: objects[r].clone(), aut_order: aut_order(&objects[r]), size: Some(size) })
        .collect();
    Ok(SplGroupoid::from_components(m, components))
}

/// Extensions of `H_0` by `H_1`, by exhaustive search.
pub fn enumerate_extensions_brute(h0: &ZModule, h1: &ZModule, budget: Budget) -> Result<SplGroupoid> {
    enumerate_splittings_brute(&Complex2::zero_differential(h1, h0), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spl::enumerate_splittings;
    use crate::zmod::ModMap;

    fn z(m: i64, f: &[i64]) -> ZModule {
        ZModule::new(m, f.to_vec()).unwrap()
    }

    #[test]
    fn brute_matches_skeleton() {
        let z2 = z(4, &[2]);
        let z4 = z(4, &[4]);
        let b = Budget::default();
        let cases = [
            Complex2::zero_differential(&z2, &z2),
            Complex2::zero_differential(&z2, &z4),
            Complex2::zero_differential(&z4, &z2),
            Complex2::new(ModMap::scalar(&z4, 2)),
            Complex2::new(ModMap::new(&z2, &z4, &[vec![2]]).unwrap()),
        ];
        for m in &cases {
            let brute = enumerate_splittings_brute(m, b).unwrap();
            let skel = enumerate_splittings(m, b).unwrap();
            assert_eq!(brute.pi0(), skel.pi0(), "{m:?}");
            for c in brute.components() {
                assert!(skel.component_of(&c.rep).is_some());
                assert_eq!(c.aut_order, skel.components()[0].aut_order);
            }
        }
        let ext = enumerate_extensions_brute(&z2, &z2, b).unwrap();
        assert_eq!(ext.pi0(), 2);
    }

    #[test]
    fn dropping_side_condition_finds_spurious_splitting() {
        let z4 = z(4, &[4]);
        let m = Complex2::new(ModMap::scalar(&z4, 2));
        let relaxed = mutation::Mutations { drop_side_condition: true, ..Default::default() };
        let g = mutation::with_mutations(relaxed, || enumerate_splittings_brute(&m, Budget::default()).unwrap());
        assert!(!g.is_empty());
        assert!(g.reps().iter().any(|s| s.mtil.factors() == [4, 4]));
    }
}
