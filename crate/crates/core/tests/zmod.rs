use ext2cat_core::zmod::{
    enumerate_modules_of_order, modules_up_to, smith_normal_form, Budget, HomSpace, Mat, ModMap, Ring, ZModule,
};
use proptest::prelude::*;

fn ring(m: i64) -> Ring {
    Ring::new(m).unwrap()
}

fn factors(m: &ZModule) -> Vec<i64> {
    m.factors().to_vec()
}

#[test]
fn snf_examples() {
    let r = ring(4);
    let (c, _) = smith_normal_form(&Mat::from_row_vecs(&[vec![2]], 1), r);
    assert_eq!(factors(&c), vec![2]);
    let (c, _) = smith_normal_form(&Mat::from_row_vecs(&[vec![0]], 1), r);
    assert_eq!(factors(&c), vec![4]);
    let (c, _) = smith_normal_form(&Mat::from_row_vecs(&[vec![2, 0], vec![0, 0]], 2), r);
    assert_eq!(factors(&c), vec![2, 4]);
}

#[test]
fn modules_of_given_order() {
    let b = Budget::default();
    let list = |m, n| -> Vec<Vec<i64>> {
        enumerate_modules_of_order(ring(m), n, b).unwrap().iter().map(factors).collect()
    };
    let mut four = list(4, 4);
    four.sort();
    assert_eq!(four, vec![vec![2, 2], vec![4]]);
    assert_eq!(list(4, 1), vec![Vec::<i64>::new()]);
    let mut eight = list(4, 8);
    eight.sort();
    assert_eq!(eight, vec![vec![2, 2, 2], vec![2, 4]]);
    assert!(enumerate_modules_of_order(ring(4), 64, Budget::new(16)).is_err());
}

fn arb_matrix() -> impl Strategy<Value = (i64, Vec<Vec<i64>>)> {
    (prop::sample::select(vec![4i64, 6, 8, 9, 12]), 1usize..4, 1usize..4).prop_flat_map(|(m, r, c)| {
        (Just(m), prop::collection::vec(prop::collection::vec(0..m, c), r))
    })
}

fn arb_map() -> impl Strategy<Value = ModMap> {
    let mods = modules_up_to(12, 24);
    (0..mods.len(), 0..mods.len(), any::<u64>()).prop_map(move |(i, j, seed)| {
        let hom = HomSpace::new(&mods[i], &mods[j]);
        let mut s = seed;
        let x: Vec<i64> = hom
            .module()
            .factors()
            .iter()
            .map(|&d| {
                let v = (s % d as u64) as i64;
                s = s / d as u64 ^ seed.rotate_left(17);
                v
            })
            .collect();
        hom.decode(&x)
    })
}

proptest! {
    #[test]
    fn snf_witnesses_diagonalize((m, rows) in arb_matrix()) {
        let a = Mat::from_row_vecs(&rows, rows[0].len());
        let (c, s) = smith_normal_form(&a, ring(m));
        let d = s.p.mul(&a, m).mul(&s.q, m);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j && i < s.diag.len() { s.diag[i].rem_euclid(m) } else { 0 };
                prop_assert_eq!(d.get(i, j), want);
            }
        }
        let total = (m as u128).pow(rows.len() as u32);
        prop_assert_eq!(c.order() * s.image_order(), total);
    }

    #[test]
    fn exactness_counts(f in arb_map()) {
        let (k, inc) = f.kernel();
        let (im, _, _) = f.image();
        let (q, proj) = f.cokernel();
        prop_assert_eq!(k.order() * im.order(), f.src().order());
        prop_assert_eq!(im.order() * q.order(), f.dst().order());
        prop_assert!(f.compose(&inc).unwrap().is_zero());
        prop_assert!(proj.compose(&f).unwrap().is_zero());
        prop_assert_eq!(f.is_iso(), k.order() == 1 && q.order() == 1);
    }
}
