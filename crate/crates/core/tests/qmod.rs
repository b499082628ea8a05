use zwb_core::exact::Field;
use zwb_core::modules::*;
use zwb_core::qmod::*;
use zwb_core::status::{Horizon, Status};
use zwb_core::zalgebra::builtin::{dead_generator, projective_space, quantum_projective_space};
use zwb_core::zalgebra::{generator, realize_window, Element, WindowAlgebra};

const Q: Field = Field::Rationals;

fn p(d: usize, lo: i64, hi: i64) -> WindowAlgebra {
    realize_window(&projective_space(d, Q).unwrap(), lo, hi).unwrap()
}

fn binom(n: i64, k: i64) -> usize {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as usize
}

#[test]
fn qhom_between_representables() {
    let w = p(1, 0, 8);
    let h = Horizon::default_for(0, 8);
    let r0 = representable(&w, 0).unwrap();
    let r1 = representable(&w, 1).unwrap();
    let end = qhom(&w, &r1, &r1, h);
    assert_eq!(end.status, Status::Pass, "{}", end.reason);
    assert_eq!(end.stable_dim, Some(1));
    let hom = qhom(&w, &r1, &r0, h);
    assert_eq!(hom.status, Status::Pass, "{}", hom.reason);
    assert_eq!(hom.stable_dim, Some(2));
    for (n, r) in &hom.restriction_ranks {
        if *n >= hom.stabilization.unwrap() {
            assert_eq!(*r, 2);
        }
    }
}

#[test]
fn qhom_matches_component_dims() {
    for d in 1..=2usize {
        let w = p(d, 0, 6);
        let h = Horizon::default_for(0, 6);
        for m in 0..=2 {
            for n in m..=2 {
                let src = representable(&w, n).unwrap();
                let dst = representable(&w, m).unwrap();
                let q = qhom(&w, &src, &dst, h);
                assert_eq!(q.stable_dim, Some(binom(n - m + d as i64, d as i64)), "d={d} n={n} m={m}");
            }
        }
    }
}

#[test]
fn qhom_from_torsion_is_zero() {
    let w = p(1, 0, 7);
    let h = Horizon::default_for(0, 7);
    let r = representable(&w, 0).unwrap();
    let (_, lt) = truncate(&w, &r, 3);
    let q = qhom(&w, &lt, &r, h);
    assert_eq!(q.stable_dim, Some(0));
    let q = qhom(&w, &lt, &lt, h);
    assert_eq!(q.stable_dim, Some(0));
}

#[test]
fn qhom_is_stable_under_truncating_the_source() {
    let w = p(1, 0, 8);
    let h = Horizon::default_for(0, 8);
    let r0 = representable(&w, 0).unwrap();
    let full = qhom(&w, &r0, &r0, h);
    let (ge, _) = truncate(&w, &r0, 2);
    let tail = qhom(&w, &ge.as_module(&w, &r0), &r0, h);
    assert_eq!(full.stable_dim, tail.stable_dim);
}

#[test]
fn ampleness() {
    let w = p(2, 0, 5);
    let h = Horizon::default_for(0, 5);
    assert_eq!(check_ample(&w, h).status, Status::Pass);
    let q = Q.from_ratio(3, 2).unwrap();
    let w = realize_window(&quantum_projective_space(1, q).unwrap(), 0, 6).unwrap();
    assert_eq!(check_ample(&w, Horizon::default_for(0, 6)).status, Status::Pass);
    let w = realize_window(&dead_generator(3, Q).unwrap(), 0, 5).unwrap();
    let r = check_ample(&w, Horizon::default_for(0, 5));
    assert_eq!(r.status, Status::Fail);
    let (m, n, k) = r.failing.unwrap();
    assert!(m < n && n <= k && k == 5);
    assert!(w.dim(k, m) > 0);
}

#[test]
fn ab_path_agrees_with_a_and_b() {
    let q = Q.from_ratio(3, 2).unwrap();
    let fixtures = vec![
        p(1, 0, 6),
        p(2, 0, 5),
        realize_window(&quantum_projective_space(2, q).unwrap(), 0, 5).unwrap(),
        realize_window(&dead_generator(3, Q).unwrap(), 0, 6).unwrap(),
    ];
    for w in &fixtures {
        let h = Horizon::default_for(w.lo, w.hi);
        let a = zwb_core::zalgebra::is_finitely_generated_with(w, h).status;
        let b = check_ample(w, h).status;
        assert_eq!(a.and(b), check_ab(w, h).unwrap(), "{}", w.name);
    }
}

#[test]
fn t_projective_levels() {
    let w = p(1, 0, 6);
    let h = Horizon::default_for(0, 6);
    let r0 = representable(&w, 0).unwrap();
    let one = r0.unit_vec(0, w.identity(0));
    let id = ModuleMap::identity(&r0);
    let r = check_t_projective(&w, &id, &r0, &r0, 0, &one, h).unwrap();
    assert_eq!((r.status, r.n0), (Status::Pass, Some(0)));

    let r1 = representable(&w, 1).unwrap();
    let sum = direct_sum(&r0, &r1);
    let proj = projection_first(&r0, &r1);
    let r = check_t_projective(&w, &proj, &sum, &r0, 0, &one, h).unwrap();
    assert_eq!(r.n0, Some(0));

    let xs: Vec<Element> = ["x0", "x1"].iter().map(|l| generator(&w, l, 0).unwrap()).collect();
    let (src, c) = cover_map(&w, 0, &xs).unwrap();
    let r = check_t_projective(&w, &c, &src, &r0, 0, &one, h).unwrap();
    assert_eq!((r.status, r.n0), (Status::Pass, Some(1)));
}

#[test]
fn zgen_reports() {
    let w = p(2, 0, 5);
    let r = zgen_report(&w, Horizon::default_for(0, 5)).unwrap();
    assert_eq!(r.status, Status::Pass, "{r:?}");
    let q = Q.from_ratio(5, 3).unwrap();
    let w = realize_window(&quantum_projective_space(2, q).unwrap(), 0, 5).unwrap();
    assert_eq!(zgen_report(&w, Horizon::default_for(0, 5)).unwrap().status, Status::Pass);
    let w = realize_window(&dead_generator(3, Q).unwrap(), 0, 5).unwrap();
    let r = zgen_report(&w, Horizon::default_for(0, 5)).unwrap();
    assert_eq!(r.ample.status, Status::Fail);
}
