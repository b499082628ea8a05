use std::collections::BTreeMap;

mod common;

use common::koszul;

use zwb_core::exact::Field;
use zwb_core::status::Status;
use zwb_core::thread::*;
use zwb_core::zalgebra::builtin::projective_space;
use zwb_core::zalgebra::{realize_window, WindowAlgebra};

const Q: Field = Field::Rationals;

fn window(d: usize, lo: i64) -> WindowAlgebra {
    realize_window(&projective_space(d, Q).unwrap(), lo, 0).unwrap()
}

/// `P(O(j))` on a thread ending at object 0.
fn p(j: i64) -> Complex {
    Complex::projective(-j)
}

/// `χ RHom(C, D)` from multiplicities and piece dimensions alone.
fn euler_oracle(thr: &ThreadAlgebra, c: &Complex, d: &Complex) -> i64 {
    let mut chi = 0;
    for (t, ct) in &c.terms {
        for (s, dt) in &d.terms {
            let sign = if (s - t).rem_euclid(2) == 0 { 1 } else { -1 };
            for &a in ct {
                for &b in dt {
                    chi += sign * thr.cat.dim(a, b) as i64;
                }
            }
        }
    }
    chi
}

fn table(pairs: &[(i64, usize)]) -> RHomTable {
    RHomTable { dims: pairs.iter().copied().collect() }
}

#[test]
fn thread_dimensions() {
    let w = window(1, -4);
    let k = extract_thread(&w, 0, 1).unwrap();
    assert_eq!(k.total_dim(), 4);
    k.check().unwrap();
    let w2 = window(2, -5);
    let b = extract_thread(&w2, 0, 2).unwrap();
    assert_eq!(b.total_dim(), 15);
    b.check().unwrap();
    let pt = extract_thread(&w2, -1, 0).unwrap();
    assert_eq!(pt.total_dim(), 1);
    assert!(extract_thread(&w2, 1, 2).is_err());
}

#[test]
fn hom_complexes() {
    let w = window(1, -4);
    let k = extract_thread(&w, 0, 1).unwrap();
    assert_eq!(hom_complex(&k, &p(0), &p(0)).table(), table(&[(0, 1)]));
    assert_eq!(hom_complex(&k, &p(0), &p(1)).table(), table(&[(0, 2)]));
    assert_eq!(hom_complex(&k, &p(1), &p(0)).table(), table(&[]));
    let c = p(0).direct_sum(&p(1).shift(-1));
    let plain = hom_complex(&k, &c, &c).table();
    let shifted = hom_complex(&k, &c, &c.shift(1)).table();
    for q in -3..3 {
        assert_eq!(shifted.get(q), plain.get(q + 1));
    }
}

#[test]
fn euler_characteristic_matches_cartan_pairing() {
    let w = window(2, -5);
    let thr = extract_thread(&w, 0, 2).unwrap();
    let kz = koszul(&w, 2, 0, 0..=2, 0);
    kz.check(&thr).unwrap();
    let list = [p(0), p(1), p(2), kz.clone(), kz.shift(1), p(1).direct_sum(&kz)];
    for c in &list {
        for d in &list {
            assert_eq!(hom_complex(&thr, c, d).table().euler(), euler_oracle(&thr, c, d));
        }
    }
}

#[test]
fn cones_shifts_and_tensors() {
    let w = window(1, -4);
    let k = extract_thread(&w, 0, 1).unwrap();
    let c = p(0).direct_sum(&p(1));
    let id = ChainMap::identity(&k, &c);
    let cone = id.cone(&k, &c, &c).unwrap();
    assert!(cohomology_profile(&k, &cone).values().all(|t| t.is_zero()));
    assert!(cone.minimize(&k).is_zero());
    let d = p(1);
    let zero = ChainMap::zero(0);
    let cz = zero.cone(&k, &c, &d).unwrap();
    let expect = d.direct_sum(&c.shift(1));
    assert_eq!(cz.multiplicities(&k), expect.multiplicities(&k));

    assert_eq!(Complex::tensor_k(&[(0, 1)], &c), c);
    let two = Complex::tensor_k(&[(0, 1), (1, 1)], &c);
    assert_eq!(two.multiplicities(&k), c.direct_sum(&c.shift(-1)).multiplicities(&k));
    let w2 = window(2, -5);
    let b = extract_thread(&w2, 0, 2).unwrap();
    let three = Complex::tensor_k(&[(0, 3)], &p(1));
    assert_eq!(three.multiplicities(&b), BTreeMap::from([(0, vec![0, 3, 0])]));
    let co = Complex::cotensor_k(&[(2, 1)], &p(0));
    assert_eq!(co.degrees(), vec![-2]);
}

#[test]
fn kronecker_mutation_matches_euler_sequence() {
    let w = window(1, -4);
    let k = extract_thread(&w, 0, 1).unwrap();
    let l = left_mutation(&k, &p(0), &p(1)).unwrap();
    l.check(&k).unwrap();
    assert_eq!(l.rank(), 3);
    let oracle = koszul(&w, 1, -1, 1..=2, 1).shift(1);
    oracle.check(&k).unwrap();
    assert_eq!(iso_in_derived(&k, &l, &oracle, 7).status, Status::Pass);
    for x in [p(0), p(1)] {
        assert_eq!(hom_complex(&k, &x, &l).table(), hom_complex(&k, &x, &oracle).table());
    }
    assert!(left_mutation(&k, &p(0), &p(0)).unwrap().is_zero());
    assert!(hom_complex(&k, &p(0), &l).table().is_zero());
    let back = right_mutation(&k, &p(0), &l).unwrap();
    assert_eq!(iso_in_derived(&k, &back, &p(1), 7).status, Status::Pass);
    assert!(left_mutation(&k, &p(0).direct_sum(&p(0)), &p(1)).is_err());
}

#[test]
fn triangle_additivity() {
    let w = window(1, -4);
    let k = extract_thread(&w, 0, 1).unwrap();
    let (e, c) = (p(0), p(1));
    let (src, _) = evaluation(&k, &e, &c);
    let l = left_mutation(&k, &e, &c).unwrap();
    let tests = [p(0), p(1), p(0).shift(2), koszul(&w, 1, -1, 1..=2, 1)];
    for x in &tests {
        let chi = |y: &Complex| hom_complex(&k, x, y).table().euler();
        assert_eq!(chi(&l), chi(&c) - chi(&src));
    }
}

#[test]
fn beilinson_double_mutation() {
    let w = window(2, -5);
    let b = extract_thread(&w, 0, 2).unwrap();
    let o3 = koszul(&w, 2, 0, 0..=2, 0);
    let resolved = representative(&w, &b, 3).unwrap();
    assert_eq!(iso_in_derived(&b, &o3, &resolved, 1).status, Status::Pass);
    let l = composite_mutation(&b, &[p(1), p(2)], &o3, Side::Left).unwrap();
    assert_eq!(iso_in_derived(&b, &l, &p(0).shift(2), 1).status, Status::Pass);
    assert_eq!(composite_mutation(&b, &[], &o3, Side::Left).unwrap(), o3);
    let single = composite_mutation(&b, &[p(2)], &o3, Side::Left).unwrap();
    assert_eq!(single, left_mutation(&b, &p(2), &o3).unwrap());
}

#[test]
fn iso_and_minimize() {
    let w = window(1, -4);
    let k = extract_thread(&w, 0, 1).unwrap();
    let c = koszul(&w, 1, -1, 1..=2, 1);
    assert_eq!(iso_in_derived(&k, &c, &c, 3).status, Status::Pass);
    assert_eq!(iso_in_derived(&k, &c, &c.shift(1), 3).status, Status::Fail);
    assert_eq!(c.minimize(&k), c);
}

#[test]
fn sequences() {
    let w = window(1, -4);
    let k = extract_thread(&w, 0, 1).unwrap();
    let r = sequence_report(&k, &[p(0), p(1)]);
    assert_eq!((r.exceptional, r.strong), (Status::Pass, Status::Pass));
    let t = |i, j| r.tables.iter().find(|x| x.i == i && x.j == j).unwrap().table.clone();
    assert_eq!(t(0, 0), table(&[(0, 1)]));
    assert_eq!(t(0, 1), table(&[(0, 2)]));
    assert!(t(1, 0).is_zero());
    let rev = sequence_report(&k, &[p(1), p(0)]);
    assert_eq!(rev.exceptional, Status::Fail);

    let w2 = window(2, -5);
    let b = extract_thread(&w2, 0, 2).unwrap();
    let r = sequence_report(&b, &[p(0), p(1), p(2)]);
    assert_eq!(r.strong, Status::Pass);
    let dims: Vec<usize> = [(0, 1), (1, 2), (0, 2)]
        .iter()
        .map(|&(i, j)| r.tables.iter().find(|x| x.i == i && x.j == j).unwrap().table.get(0))
        .collect();
    assert_eq!(dims, vec![3, 3, 6]);
}

#[test]
fn helices() {
    let w = window(1, -5);
    let k = extract_thread(&w, 0, 1).unwrap();
    let fam = helix_family(&w, &k, 0..=4).unwrap();
    let r = verify_helix(&k, &fam, 2, 2, 11);
    assert_eq!(r.status, Status::Pass, "{r:?}");
    assert!(r.checks.len() >= 2);
    assert!(r.checks.windows(2).all(|c| c[0].status == c[1].status));

    let w2 = window(2, -5);
    let b = extract_thread(&w2, 0, 2).unwrap();
    let fam = helix_family(&w2, &b, 0..=4).unwrap();
    let r = verify_helix(&b, &fam, 3, 3, 11);
    assert_eq!(r.status, Status::Pass, "{r:?}");
    let bad = verify_helix(&b, &fam, 3, 2, 11);
    assert_eq!(bad.status, Status::Fail);
    assert_eq!(bad.checks[0].matching_shift, Some(-2));
    assert!(bad.checks[0].reason.contains("shift mismatch"));
}
