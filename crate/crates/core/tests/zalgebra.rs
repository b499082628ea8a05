mod common;

use common::monomial_count;

use zwb_core::category::LinearCategory;
use zwb_core::exact::Field;
use zwb_core::zalgebra::builtin::*;
use zwb_core::zalgebra::{compose, generator, grading_report, is_finitely_generated_window, realize_window};
use zwb_core::zalgebra::{GeneratorScheme, GradedPresentation, RelationScheme, Term};
use zwb_core::status::Status;

const Q: Field = Field::Rationals;

fn all_dims_match(cat: &LinearCategory, vars: usize) -> bool {
    cat.objects()
        .all(|m| (m..=cat.hi).all(|n| cat.dim(n, m) == monomial_count(vars, (n - m) as usize)))
}

#[test]
fn projective_line_dims() {
    let w = realize_window(&projective_space(1, Q).unwrap(), -4, 4).unwrap();
    assert!(all_dims_match(&w, 2));
    assert_eq!(w.dim(4, -4), 9);
}

#[test]
fn projective_plane_dims() {
    let w = realize_window(&projective_space(2, Q).unwrap(), 0, 4).unwrap();
    assert_eq!(w.dim(4, 0), 15);
    assert!(all_dims_match(&w, 3));
    assert!(w.associativity_violation().is_none());
}

#[test]
fn no_generators_gives_identity_category() {
    let p = GradedPresentation::new("empty", Q);
    let w = realize_window(&p, -2, 2).unwrap();
    for m in -2..=2 {
        for n in m..=2 {
            assert_eq!(w.dim(n, m), usize::from(n == m));
        }
    }
}

#[test]
fn commutativity_and_quantum_relation() {
    let w = realize_window(&projective_space(2, Q).unwrap(), 0, 2).unwrap();
    let xy = compose(&w, &generator(&w, "x0", 0).unwrap(), &generator(&w, "x1", 1).unwrap()).unwrap();
    let yx = compose(&w, &generator(&w, "x1", 0).unwrap(), &generator(&w, "x0", 1).unwrap()).unwrap();
    assert_eq!(xy, yx);
    assert_eq!(xy.degree(), 2);

    let q = Q.from_i64(3);
    let w = realize_window(&quantum_projective_space(1, q.clone()).unwrap(), 0, 4).unwrap();
    assert!(all_dims_match(&w, 2));
    let x0 = generator(&w, "x0", 0).unwrap();
    let y1 = generator(&w, "x1", 1).unwrap();
    let y0 = generator(&w, "x1", 0).unwrap();
    let x1 = generator(&w, "x0", 1).unwrap();
    let a = compose(&w, &x0, &y1).unwrap();
    let b = compose(&w, &y0, &x1).unwrap();
    let qb = zwb_core::zalgebra::Element { coords: b.coords.scale(&q), ..b };
    assert!(a.sub(&qb).is_zero());
    assert!(compose(&w, &x0, &x0).is_err());
}

#[test]
fn unit_laws() {
    let w = realize_window(&projective_space(1, Q).unwrap(), 0, 3).unwrap();
    let a = zwb_core::zalgebra::Element::basis(3, 1, 1, &w);
    let one_low = zwb_core::zalgebra::Element::identity(&w, 1);
    let one_high = zwb_core::zalgebra::Element::identity(&w, 3);
    assert_eq!(compose(&w, &one_low, &a).unwrap(), a);
    assert_eq!(compose(&w, &a, &one_high).unwrap(), a);
}

#[test]
fn truncated_polynomial_counts() {
    let w = realize_window(&truncated_infinite_polynomial(3, Q).unwrap(), 0, 2).unwrap();
    assert_eq!(w.dim(2, 0), 6);
    let r = grading_report(&realize_window(&truncated_infinite_polynomial(5, Q).unwrap(), 0, 3).unwrap());
    assert!(r.connected && r.positively_graded);
}

#[test]
fn builtin_shapes() {
    let p = projective_space(1, Q).unwrap();
    assert_eq!((p.generators.len(), p.relations.len()), (2, 1));
    assert!(quantum_projective_space(1, Q.zero()).is_err());
}

#[test]
fn finite_generation() {
    let w = realize_window(&projective_space(2, Q).unwrap(), 0, 5).unwrap();
    let r = is_finitely_generated_window(&w);
    assert_eq!(r.status, Status::Pass);
    assert!(r.per_object.iter().filter(|o| o.object <= 3).all(|o| o.total == 3));
    let w = realize_window(&projective_space(1, Q).unwrap(), -3, 5).unwrap();
    let r = is_finitely_generated_window(&w);
    assert_eq!(r.status, Status::Pass);
    assert!(r.per_object.iter().all(|o| o.total == 2));

    let w = realize_window(&dead_generator(8, Q).unwrap(), 0, 7).unwrap();
    let r = is_finitely_generated_window(&w);
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.failing_object, Some(0));

    let w = realize_window(&projective_space(1, Q).unwrap(), 0, 1).unwrap();
    assert_eq!(is_finitely_generated_window(&w).status, Status::Inconclusive);
}

#[test]
fn degree_zero_and_inhomogeneous_rejected() {
    let mut p = projective_space(1, Q).unwrap();
    p.generators.push(GeneratorScheme::periodic("t", 0));
    assert!(realize_window(&p, 0, 2).is_err());
    let mut p = projective_space(1, Q).unwrap();
    p.relations.push(RelationScheme {
        terms: vec![Term::new(Q.one(), &["x0", "x0"])],
        base: Some(10),
        eps_terms: vec![],
    });
    match realize_window(&p, 0, 3) {
        Err(zwb_core::Error::OutsideWindow { object, .. }) => assert_eq!(object, 10),
        other => panic!("{other:?}"),
    }
}
