//! Built-in presentations.

use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::zalgebra::presentation::{GeneratorScheme, GradedPresentation, RelationScheme, Term};

fn commuting(name: String, field: Field, labels: &[String]) -> GradedPresentation {
    let mut p = GradedPresentation::new(name, field);
    p.generators = labels.iter().map(|l| GeneratorScheme::periodic(l.clone(), 1)).collect();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let (a, b) = (labels[i].as_str(), labels[j].as_str());
            p.relations.push(RelationScheme::periodic(vec![
                Term::new(field.one(), &[a, b]),
                Term::new(-field.one(), &[b, a]),
            ]));
        }
    }
    p
}

fn xs(d: usize) -> Vec<String> {
    (0..=d).map(|i| format!("x{i}")).collect()
}

/// Homogeneous coordinate ring of `ℙ^d`: `x0..xd` of degree 1, commuting.
pub fn projective_space(d: usize, field: Field) -> Result<GradedPresentation> {
    if d < 1 {
        return Err(Error::Presentation("projective_space needs d >= 1".into()));
    }
    Ok(commuting(format!("projective_space({d})"), field, &xs(d)))
}

/// Relations `x_i x_j = q·x_j x_i` for `i < j`.
pub fn quantum_projective_space(d: usize, q: Scalar) -> Result<GradedPresentation> {
    if d < 1 {
        return Err(Error::Presentation("quantum_projective_space needs d >= 1".into()));
    }
    if q.is_zero() {
        return Err(Error::Presentation("q must be invertible".into()));
    }
    let field = q.field();
    let mut p = projective_space(d, field)?;
    p.name = format!("quantum_projective_space({d},{q})");
    for r in &mut p.relations {
        r.terms[1].coeff = -q.clone();
    }
    Ok(p)
}

/// First-order quantum space: `x_i x_j = x_j x_i + ε·c_ij·x_j x_i`, with the
/// `c_ij` listed in the order `(0,1), (0,2), …, (1,2), …`.
pub fn quantum_projective_space_eps(d: usize, c: &[Scalar], field: Field) -> Result<GradedPresentation> {
    let mut p = projective_space(d, field)?;
    if c.len() != p.relations.len() {
        return Err(Error::Presentation(format!("expected {} coefficients, got {}", p.relations.len(), c.len())));
    }
    p.name = format!("quantum_projective_space_eps({d})");
    for (r, cij) in p.relations.iter_mut().zip(c) {
        if !cij.is_zero() {
            let ba: Vec<&str> = r.terms[1].word.iter().map(String::as_str).collect();
            r.eps_terms = vec![Term::new(-cij.clone(), &ba)];
        }
    }
    Ok(p)
}

/// Polynomial ring in the commuting variables `x1..xN`.
pub fn truncated_infinite_polynomial(n: usize, field: Field) -> Result<GradedPresentation> {
    if n < 1 {
        return Err(Error::Presentation("truncated_infinite_polynomial needs N >= 1".into()));
    }
    let labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Ok(commuting(format!("truncated_infinite_polynomial({n})"), field, &labels))
}

/// One generator `g{d}` of each degree `d = 1..=max_degree` at every object,
/// with every product of two generators set to zero. No generator is ever
/// reached from lower degrees.
pub fn dead_generator(max_degree: usize, field: Field) -> Result<GradedPresentation> {
    if max_degree < 1 {
        return Err(Error::Presentation("dead_generator needs a positive degree".into()));
    }
    let mut p = GradedPresentation::new(format!("dead_generator({max_degree})"), field);
    let labels: Vec<String> = (1..=max_degree).map(|d| format!("g{d}")).collect();
    for (d, l) in labels.iter().enumerate() {
        p.generators.push(GeneratorScheme::periodic(l.clone(), d as i64 + 1));
    }
    for a in &labels {
        for b in &labels {
            p.relations.push(RelationScheme::periodic(vec![Term::new(field.one(), &[a, b])]));
        }
    }
    Ok(p)
}

/// `ℙ¹` with the commutator imposed twice, the second copy carrying an
/// ε-correction `x0*x0`. Over the dual numbers this forces `ε·x0² = 0`.
pub fn nonflat_fixture(field: Field) -> GradedPresentation {
    let mut p = commuting("nonflat_fixture".into(), field, &xs(1));
    let mut dup = p.relations[0].clone();
    dup.eps_terms = vec![Term::new(field.one(), &["x0", "x0"])];
    p.relations.push(dup);
    p
}

/// Parses names such as `projective_space(2)` or `quantum_projective_space(1,3)`.
pub fn by_name(spec: &str, field: Field) -> Result<GradedPresentation> {
    let spec = spec.trim();
    let (name, args) = match spec.find('(') {
        Some(i) if spec.ends_with(')') => (&spec[..i], &spec[i + 1..spec.len() - 1]),
        _ => (spec, ""),
    };
    let args: Vec<&str> = args.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let int = |i: usize| -> Result<usize> {
        args.get(i)
            .ok_or_else(|| Error::Parse(format!("{name} needs argument {}", i + 1)))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer in {spec}")))
    };
    match name {
        "projective_space" => projective_space(int(0)?, field),
        "quantum_projective_space" => {
            let q = field.parse_scalar(args.get(1).ok_or_else(|| Error::Parse("missing q".into()))?)?;
            quantum_projective_space(int(0)?, q)
        }
        "quantum_projective_space_eps" => {
            let d = int(0)?;
            let pairs = d * (d + 1) / 2;
            let c: Vec<Scalar> = if args.len() > 1 {
                args[1..].iter().map(|s| field.parse_scalar(s)).collect::<Result<_>>()?
            } else {
                vec![field.one(); pairs]
            };
            quantum_projective_space_eps(d, &c, field)
        }
        "truncated_infinite_polynomial" => truncated_infinite_polynomial(int(0)?, field),
        "dead_generator" => dead_generator(int(0)?, field),
        "nonflat_fixture" => Ok(nonflat_fixture(field)),
        _ => Err(Error::Parse(format!("unknown built-in {spec:?}"))),
    }
}

/// Names accepted by [`by_name`], with the arguments used by `generate --all`.
pub const CATALOG: &[&str] = &[
    "projective_space(1)",
    "projective_space(2)",
    "quantum_projective_space(1,2)",
    "quantum_projective_space(2,3)",
    "quantum_projective_space_eps(1)",
    "quantum_projective_space_eps(2)",
    "truncated_infinite_polynomial(5)",
    "dead_generator(8)",
    "nonflat_fixture",
];
