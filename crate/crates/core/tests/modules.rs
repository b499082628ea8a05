use zwb_core::exact::Field;
use zwb_core::modules::*;
use zwb_core::status::{Horizon, Status};
use zwb_core::zalgebra::builtin::projective_space;
use zwb_core::zalgebra::{realize_window, WindowAlgebra};

const Q: Field = Field::Rationals;

fn p1(lo: i64, hi: i64) -> WindowAlgebra {
    realize_window(&projective_space(1, Q).unwrap(), lo, hi).unwrap()
}

#[test]
fn representable_components() {
    let w = p1(-2, 5);
    let r = representable(&w, 0).unwrap();
    assert_eq!(r.dims, vec![0, 0, 1, 2, 3, 4, 5, 6]);
    r.validate(&w).unwrap();
}

#[test]
fn truncation_is_exact() {
    let w = p1(0, 5);
    let r = representable(&w, 0).unwrap();
    let (ge, lt) = truncate(&w, &r, 2);
    assert_eq!(lt.dims, vec![1, 2, 0, 0, 0, 0]);
    for (n, d) in r.dims.iter().enumerate() {
        assert_eq!(*d, ge.dims()[n] + lt.dims[n]);
    }
    lt.validate(&w).unwrap();
    assert!(ge.is_closed(&w, &r));
    let (ge, lt) = truncate(&w, &r, 0);
    assert_eq!(ge.dims(), r.dims);
    assert!(lt.is_zero());
    let (ge, _) = truncate(&w, &r, 6);
    assert!(ge.dims().iter().all(|&d| d == 0));
}

#[test]
fn ideals_match_truncation() {
    let w = p1(0, 4);
    for (m, s) in ideal(&w, IdealKind::Tail(2)).unwrap() {
        let r = representable(&w, m).unwrap();
        assert_eq!(s, truncate(&w, &r, 2.max(m)).0);
    }
    for (m, s) in ideal(&w, IdealKind::Plus).unwrap() {
        assert_eq!(s.dim(m), 0);
        assert_eq!(w.dim(m, m) - s.dim(m), 1);
    }
    assert!(ideal(&w, IdealKind::Tail(9)).is_err());
}

#[test]
fn products_with_ideals() {
    let w = p1(0, 4);
    let r = representable(&w, 0).unwrap();
    let one = (0, r.unit_vec(0, 0));
    let plus = submodule_product(&w, &r, std::slice::from_ref(&one), IdealKind::Plus);
    assert_eq!(plus, truncate(&w, &r, 1).0);
    assert_eq!(submodule_product(&w, &r, &[], IdealKind::Whole), Submodule::zero(&r));
    assert_eq!(submodule_product(&w, &r, &[one], IdealKind::Whole), Submodule::full(&r));
}

#[test]
fn boundedness_and_torsion() {
    let w = p1(0, 7);
    let h = Horizon::default_for(0, 7);
    let r = representable(&w, 0).unwrap();
    let (_, lt) = truncate(&w, &r, 2);
    assert_eq!(is_right_bounded(&lt, h), Status::Pass);
    assert_eq!(is_torsion(&w, &lt, h).status, Status::Pass);
    assert_eq!(is_right_bounded(&r, h), Status::Inconclusive);
    let t = is_torsion(&w, &r, h);
    assert_eq!(t.status, Status::Fail);
    assert_eq!(t.witness, Some((0, 0)));
    let z = WindowModule::zero(&w);
    assert_eq!(is_right_bounded(&z, h), Status::Pass);
    assert_eq!(is_torsion(&w, &z, h).status, Status::Pass);
}

#[test]
fn module_generators() {
    let w = p1(0, 7);
    let h = Horizon::default_for(0, 7);
    let r = representable(&w, 0).unwrap();
    let g = is_finitely_generated_module(&w, &r, h);
    assert_eq!((g.status, g.generators.clone()), (Status::Pass, vec![(0, 0)]));
    let tail = truncate(&w, &r, 2).0.as_module(&w, &r);
    let g = is_finitely_generated_module(&w, &tail, h);
    assert_eq!(g.status, Status::Pass);
    assert_eq!(g.generators.len(), 3);
    assert!(g.generators.iter().all(|(n, _)| *n == 2));
    let socle = WindowModule::semisimple(&w, vec![1; 8]);
    assert_eq!(is_finitely_generated_module(&w, &socle, h).status, Status::Fail);
}

#[test]
fn yoneda_is_module_map() {
    let w = p1(0, 4);
    let x = zwb_core::zalgebra::generator(&w, "x0", 0).unwrap();
    let f = yoneda_map(&w, &x).unwrap();
    let src = representable(&w, 1).unwrap();
    let dst = representable(&w, 0).unwrap();
    f.validate(&w, &src, &dst).unwrap();
    let coker = f.cokernel(&w, &dst);
    assert_eq!(coker.dims, vec![1, 1, 1, 1, 1]);
}
