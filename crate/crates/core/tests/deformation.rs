mod common;

use common::bar_oracle;
use zwb_core::category::LinearCategory;
use zwb_core::deformation::*;
use zwb_core::exact::{Field, Scalar, SparseVec};
use zwb_core::status::{Horizon, Status};
use zwb_core::thread::{extract_thread, iso_in_derived, left_mutation, Complex, ThreadAlgebra};
use zwb_core::zalgebra::builtin::{nonflat_fixture, projective_space, quantum_projective_space_eps};
use zwb_core::zalgebra::{realize_window, GradedPresentation, Term};

const Q: Field = Field::Rationals;

fn q(v: i64) -> Scalar {
    Q.from_i64(v)
}

fn pd(d: usize, lo: i64, hi: i64) -> LinearCategory {
    realize_window(&projective_space(d, Q).unwrap(), lo, hi).unwrap().cat
}

#[test]
fn hochschild_against_bar_oracle() {
    let kron = pd(1, -1, 0);
    assert_eq!(bar_oracle(&kron, 2), vec![1, 3, 0]);
    assert_eq!(hochschild_dims(&kron, 2).unwrap(), bar_oracle(&kron, 2));
    let beil = pd(2, -2, 0);
    let oracle = bar_oracle(&beil, 2);
    assert_eq!(oracle[2], 10);
    assert_eq!(hochschild_dims(&beil, 2).unwrap(), oracle);
    let point = pd(2, 0, 0);
    assert_eq!(hochschild_dims(&point, 2).unwrap(), vec![1, 0, 0]);
}

#[test]
fn differential_squares_to_zero() {
    for cat in [pd(1, 0, 4), pd(2, 0, 3)] {
        let hc = HochschildComplex::new(&cat, 4.min((cat.hi - cat.lo) as usize + 1)).unwrap();
        for n in 0..hc.max_arity - 1 {
            for i in 0..hc.dim(n) {
                let e = SparseVec::unit(i, Q);
                assert!(hc.apply(n + 1, &hc.apply(n, &e)).is_empty(), "arity {n}, coordinate {i}");
            }
        }
    }
}

#[test]
fn interior_windows_stabilize() {
    let w = pd(2, 0, 6);
    assert_eq!(default_interior(&w), (1, 5));
    assert_eq!(interior_hochschild(&w, (1, 5), 2).unwrap()[2], 10);
    assert_eq!(interior_hochschild(&w, (1, 4), 2).unwrap()[2], 10);
    assert!(interior_hochschild(&w, (0, 5), 2).is_err());
    assert!(interior_hochschild(&w, (2, 3), 2).is_err());
}

fn quantum(d: usize) -> GradedPresentation {
    let c: Vec<Scalar> = (1..=(d * (d + 1) / 2) as i64).map(q).collect();
    quantum_projective_space_eps(d, &c, Q).unwrap()
}

#[test]
fn flatness_of_deformed_windows() {
    let dw = deform_window(&quantum(1), 0, 5).unwrap();
    assert_eq!(dw.flatness.status, Status::Pass);
    for p in &dw.flatness.pieces {
        assert_eq!(p.free_rank, Some((p.top - p.bottom + 1) as usize));
        assert_eq!(p.k_dim, 2 * p.base_dim);
    }
    let dw = deform_window(&quantum(2), 0, 4).unwrap();
    assert_eq!(dw.flatness.status, Status::Pass);
    let bad = deform_window(&nonflat_fixture(Q), 0, 4).unwrap();
    assert_eq!(bad.flatness.status, Status::Fail);
    let (n, m) = bad.flatness.failing.unwrap();
    assert_eq!(n - m, 2);
    let mut junk = projective_space(1, Q).unwrap();
    junk.relations[0].eps_terms = vec![Term::new(q(1), &["x0"])];
    assert!(deform_window(&junk, 0, 4).is_err());
}

#[test]
fn finiteness_lifts() {
    let dw = deform_window(&quantum(2), 0, 5).unwrap();
    let h = Horizon::default_for(0, 5);
    let r = finiteness_lift_report(&dw.base, &dw.deformed, h).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(r.rows.iter().all(|row| row.base == row.deformed));
    let trivial = deform_window(&projective_space(2, Q).unwrap(), 0, 5).unwrap();
    let r = finiteness_lift_report(&trivial.base, &trivial.deformed, h).unwrap();
    assert!(r.rows.iter().all(|row| row.base == row.deformed));
}

#[test]
fn cocycles_from_both_paths() {
    let dw = deform_window(&quantum(2), 0, 4).unwrap();
    let hc = HochschildComplex::new(&dw.base, 3).unwrap();
    let zero = cocycle_check(&hc, &DeformationDatum::trivial());
    assert_eq!(zero.status, Status::Pass);
    let gamma = SparseVec::from_pairs((0..hc.dim(1)).step_by(7).map(|i| (i, q(i as i64 % 5 - 2))));
    let cob = DeformationDatum::coboundary(&hc, &gamma);
    assert_eq!(cocycle_check(&hc, &cob).status, Status::Pass);
    let datum = mu2_from_deformed(&hc, &dw.deformed).unwrap();
    assert!(!datum.mu2.is_empty());
    let r = cocycle_check(&hc, &datum);
    assert_eq!(r.status, Status::Pass);
    assert!(r.paths_agree);
    let broken = DeformationDatum { mu2: SparseVec::unit(0, Q), provenance: "junk".into() };
    let r = cocycle_check(&hc, &broken);
    assert_eq!(r.status, Status::Fail);
    assert!(r.paths_agree);
}

#[test]
fn gauge_equivalence() {
    let dw = deform_window(&quantum(1), 0, 5).unwrap();
    let hc = HochschildComplex::new(&dw.base, 3).unwrap();
    let d = mu2_from_deformed(&hc, &dw.deformed).unwrap();
    assert!(!d.mu2.is_empty());
    let same = gauge_equivalent(&hc, &d, &d);
    assert_eq!(same.gamma, Some(SparseVec::new()));
    let r = gauge_equivalent(&hc, &d, &DeformationDatum::trivial());
    assert_eq!(r.status, Status::Pass);
    assert_eq!(hc.apply(1, r.gamma.as_ref().unwrap()), d.mu2);

    let g0 = SparseVec::from_pairs([(1, q(3)), (4, q(-1))]);
    let moved = DeformationDatum { mu2: d.mu2.add(&hc.apply(1, &g0)), provenance: "moved".into() };
    let r1 = gauge_equivalent(&hc, &moved, &d);
    assert_eq!(hc.apply(1, r1.gamma.as_ref().unwrap()), hc.apply(1, &g0));
    let r2 = gauge_equivalent(&hc, &d, &moved);
    let back = r1.gamma.unwrap().add(&r2.gamma.unwrap());
    assert!(hc.apply(1, &back).is_empty());

    let w2 = deform_window(&quantum(2), 0, 4).unwrap();
    let hc2 = HochschildComplex::new(&w2.base, 3).unwrap();
    let d2 = mu2_from_deformed(&hc2, &w2.deformed).unwrap();
    assert_eq!(gauge_equivalent(&hc2, &d2, &DeformationDatum::trivial()).status, Status::Fail);
}

#[test]
fn restriction_to_threads() {
    let w = deform_window(&quantum(2), 0, 4).unwrap();
    let hc = HochschildComplex::new(&w.base, 3).unwrap();
    let thread = HochschildComplex::new(&w.base.restrict(1, 3).unwrap(), 3).unwrap();
    let t = restrict_deformation(&hc, &DeformationDatum::trivial(), &thread).unwrap();
    assert!(t.mu2.is_empty());
    let d = mu2_from_deformed(&hc, &w.deformed).unwrap();
    let t = restrict_deformation(&hc, &d, &thread).unwrap();
    assert_eq!(cocycle_check(&thread, &t).status, Status::Pass);
    let gamma = SparseVec::from_pairs((0..hc.dim(1)).step_by(5).map(|i| (i, q(1 + i as i64 % 3))));
    assert_eq!(hc.restrict_to(&thread, 2, &hc.apply(1, &gamma)), thread.apply(1, &hc.restrict_to(&thread, 1, &gamma)));

    let w1 = deform_window(&quantum(1), 0, 5).unwrap();
    let hc1 = HochschildComplex::new(&w1.base, 3).unwrap();
    let kron = HochschildComplex::new(&w1.base.restrict(2, 3).unwrap(), 3).unwrap();
    let d1 = mu2_from_deformed(&hc1, &w1.deformed).unwrap();
    let k = restrict_deformation(&hc1, &d1, &kron).unwrap();
    assert_eq!(gauge_equivalent(&kron, &k, &DeformationDatum::trivial()).status, Status::Pass);
}

#[test]
fn restriction_probe() {
    let w = pd(2, 0, 6);
    let r = restriction_equivalence_probe(&w, None, 4, 2).unwrap();
    assert_eq!((r.interior_h2, r.thread_h2, r.restriction_rank), (10, 10, 10));
    assert_eq!(r.status, Status::Pass);
    let r4 = restriction_equivalence_probe(&w, Some((1, 4)), 4, 2).unwrap();
    assert_eq!(r4.status, Status::Pass);
    let p1 = pd(1, 0, 5);
    let r = restriction_equivalence_probe(&p1, None, 3, 1).unwrap();
    assert_eq!((r.interior_h2, r.thread_h2, r.status), (0, 0, Status::Pass));
    assert!(restriction_equivalence_probe(&w, None, 6, 2).is_err());
}

#[test]
fn ext_vanishing() {
    let w = pd(2, -5, 0);
    let thr = extract_thread(&w, 0, 2).unwrap();
    let r = ext_vanishing_check(&w, &thr, &[0, 1, 2, 3, 4]).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.pairs.len(), 15);
    let w1 = pd(1, -4, 0);
    let k = extract_thread(&w1, 0, 1).unwrap();
    assert_eq!(ext_vanishing_check(&w1, &k, &[0, 1, 2, 3]).unwrap().status, Status::Pass);
}

fn threads(p: &GradedPresentation, lo: i64, i: i64, l: i64) -> (ThreadAlgebra, ThreadAlgebra) {
    let dw = deform_window(p, lo, 0).unwrap();
    assert_eq!(dw.flatness.status, Status::Pass);
    (
        ThreadAlgebra::new(dw.deformed.restrict(i - l, i).unwrap()).unwrap(),
        extract_thread(&dw.base, i, l).unwrap(),
    )
}

#[test]
fn mutation_commutes_with_reduction() {
    for (l, e, c) in [(1, 0, -1), (2, -1, -2), (2, 0, -2)] {
        let (def, base) = threads(&quantum(1), -3, 0, l);
        let (e, c) = (Complex::projective(e), Complex::projective(c));
        let lifted = left_mutation(&def, &e, &c).unwrap();
        let reduced = reduce_complex(&def, &base, &lifted).unwrap();
        let direct = left_mutation(&base, &e, &c).unwrap();
        assert_eq!(iso_in_derived(&base, &reduced, &direct, 5).status, Status::Pass, "thread length {l}");
    }
}
