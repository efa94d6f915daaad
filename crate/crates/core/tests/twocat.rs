use ext2cat_core::cx2::{ChainMap2, Complex2};
use ext2cat_core::twocat::{
    compose, compose_kan, compose_zigzag, derived_hom_oracle, derived_hom_with, from_zigzag, hom_category, hom_category_with,
    hom_fiber, homotopy_classes, to_zigzag, truncate, zigzag_of_chain_map, OneMorphism, ResolutionKind, Zigzag,
};
use ext2cat_core::zmod::{Budget, ModMap, ZModule};

fn z(m: i64, f: &[i64]) -> ZModule {
    ZModule::new(m, f.to_vec()).unwrap()
}

fn twisted() -> Complex2 {
    Complex2::new(ModMap::scalar(&z(4, &[4]), 2))
}

fn split() -> Complex2 {
    let z2 = z(4, &[2]);
    Complex2::zero_differential(&z2, &z2)
}

fn acyclic() -> Complex2 {
    Complex2::identity_on(&z(4, &[2]))
}

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn fibers_of_split_complex() {
    let m = split();
    let h = hom_category_with(&m, &m, budget(), true).unwrap();
    assert_eq!(h.fibers.len(), 4);
    assert!(h.fibers.iter().all(|f| f.pi0() == 2));
    assert_eq!(h.pi0(), 8);
}

#[test]
fn fibers_of_twisted_complex() {
    let m = twisted();
    let id = ModMap::identity(m.h0());
    let zero = ModMap::zero(m.h1(), m.h1());
    assert!(hom_fiber(&m, &m, &id, &zero, budget()).unwrap().is_empty());
    let g = hom_fiber(&m, &m, &id, &ModMap::identity(m.h1()), budget()).unwrap();
    assert_eq!(g.pi0(), 2);
    let h = hom_category_with(&m, &m, budget(), true).unwrap();
    assert_eq!(h.nonempty().len(), 2);
    assert_eq!(h.pi0(), 4);
    for f in h.nonempty() {
        assert_eq!(f.f0.is_zero(), f.f1.is_zero());
    }
}

#[test]
fn acyclic_source_has_one_arrow() {
    for n in [split(), twisted(), acyclic()] {
        let h = hom_category(&acyclic(), &n, budget()).unwrap();
        assert_eq!(h.pi0(), 1);
    }
}

#[test]
fn oracle_spot_values() {
    assert_eq!(derived_hom_oracle(&twisted(), &twisted()).unwrap().order(), 4);
    assert_eq!(derived_hom_oracle(&split(), &split()).unwrap().order(), 8);
    let k = homotopy_classes(&twisted(), &twisted()).unwrap();
    assert_eq!(k.chain_maps().len(), 8);
    assert_eq!(k.order(), 4);
    for m in [split(), twisted(), acyclic()] {
        for n in [split(), twisted(), acyclic()] {
            let a = derived_hom_with(&m, &n, ResolutionKind::Periodic).unwrap();
            let b = derived_hom_with(&m, &n, ResolutionKind::KernelCover).unwrap();
            assert_eq!(a.group().factors(), b.group().factors());
        }
    }
    let o = derived_hom_oracle(&twisted(), &twisted()).unwrap();
    assert_ne!(o.class_of(&ChainMap2::identity(&twisted())).unwrap(), o.group().zero_elem());
}

#[test]
fn zigzag_round_trip() {
    for (m, n) in [(split(), split()), (twisted(), twisted()), (split(), twisted()), (twisted(), split())] {
        let h = hom_category(&m, &n, budget()).unwrap();
        for f in h.morphisms().unwrap() {
            let zz = to_zigzag(&f).unwrap();
            let back = from_zigzag(&zz).unwrap();
            assert!(back.is_isomorphic(&f), "{f:?} came back as {back:?}");
        }
    }
}

#[test]
fn identity_and_unit_laws() {
    for m in [split(), twisted(), acyclic()] {
        let id = OneMorphism::identity(&m).unwrap();
        assert_eq!(id.f0, ModMap::identity(m.h0()));
        assert_eq!(id.f1, ModMap::identity(m.h1()));
        let zz = to_zigzag(&id).unwrap();
        assert!(Zigzag::identity(&m).map_to(&zz).is_some());
        for f in hom_category(&m, &m, budget()).unwrap().morphisms().unwrap() {
            assert!(compose(&id, &f).unwrap().is_isomorphic(&f));
            assert!(compose(&f, &id).unwrap().is_isomorphic(&f));
        }
        let ii = compose_zigzag(&Zigzag::identity(&m), &Zigzag::identity(&m)).unwrap();
        assert!(ii.map_to(&Zigzag::identity(&m)).is_some());
    }
}

#[test]
fn equivalent_zigzags_give_one_component() {
    let m = twisted();
    for f in hom_category(&m, &m, budget()).unwrap().morphisms().unwrap() {
        let zz = to_zigzag(&f).unwrap();
        let ext = compose_zigzag(&zz, &Zigzag::identity(&m)).unwrap();
        assert!(ext.map_to(&zz).is_some());
        assert!(from_zigzag(&ext).unwrap().is_isomorphic(&f));
    }
}

#[test]
fn square_of_e_vanishes() {
    let m = twisted();
    let tr = truncate(&[m.clone()], budget()).unwrap();
    let ring = tr.end_ring(0).unwrap();
    assert!(ring.is_dual_numbers(), "{ring:?}");
    let e = ring.square_zero[0];
    assert_ne!(e, ring.identity);
    let f = tr.arrow(0, 0, e);
    assert!(f.f0.is_zero() && f.f1.is_zero());
    let ee = compose_kan(f, f).unwrap();
    assert!(ee.is_isomorphic(tr.arrow(0, 0, ring.zero)));
}

#[test]
fn kan_route_agrees() {
    let objs = [split(), twisted()];
    for a in &objs {
        for b in &objs {
            for c in &objs {
                let fs = hom_category(a, b, budget()).unwrap().morphisms().unwrap();
                let gs = hom_category(b, c, budget()).unwrap().morphisms().unwrap();
                for f in &fs {
                    for g in &gs {
                        let x = compose(f, g).unwrap();
                        let y = compose_kan(f, g).unwrap();
                        assert!(x.is_isomorphic(&y));
                    }
                }
            }
        }
    }
}

#[test]
fn chain_map_zigzags_match_oracle() {
    let m = twisted();
    let o = derived_hom_oracle(&m, &m).unwrap();
    let tr = truncate(&[m.clone()], budget()).unwrap();
    for phi in homotopy_classes(&m, &m).unwrap().chain_maps() {
        let f = from_zigzag(&zigzag_of_chain_map(&phi)).unwrap();
        let k = tr.hom(0, 0).index_of(&f).unwrap();
        let zz = to_zigzag(tr.arrow(0, 0, k)).unwrap();
        assert_eq!(o.class_of_zigzag(&zz).unwrap(), o.class_of(&phi).unwrap());
    }
}

#[test]
fn truncation_is_a_category() {
    let tr = truncate(&[split(), twisted(), acyclic()], budget()).unwrap();
    let rep = tr.check_axioms().unwrap();
    assert!(rep.passed(), "{:?}", rep.failures);
    for i in 0..3 {
        for j in 0..3 {
            let o = derived_hom_oracle(&tr.objects[i], &tr.objects[j]).unwrap();
            assert_eq!(tr.hom_size(i, j) as u128, o.order());
        }
    }
}
