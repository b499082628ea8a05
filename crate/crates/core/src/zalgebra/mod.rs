//! Presented Z-algebras and their realization on finite windows.

pub mod builtin;
pub mod presentation;
pub mod realize;

use std::ops::Deref;

use serde::Serialize;

use crate::category::LinearCategory;
use crate::error::{Error, Result};
use crate::exact::{Echelon, SparseVec};
use crate::status::{Horizon, Status};

pub use presentation::{GeneratorScheme, GradedPresentation, RelationScheme, Term};

/// A presentation realized on `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct WindowAlgebra {
    pub name: String,
    pub cat: LinearCategory,
}

impl Deref for WindowAlgebra {
    type Target = LinearCategory;
    fn deref(&self) -> &LinearCategory {
        &self.cat
    }
}

/// Realizes the ε-free part of `p` on `[lo, hi]`.
pub fn realize_window(p: &GradedPresentation, lo: i64, hi: i64) -> Result<WindowAlgebra> {
    Ok(WindowAlgebra { name: p.name.clone(), cat: realize::realize(p, lo, hi, false)? })
}

/// Realizes `p` over the dual numbers, ε-corrections included.
pub fn realize_deformed(p: &GradedPresentation, lo: i64, hi: i64) -> Result<LinearCategory> {
    realize::realize(p, lo, hi, true)
}

/// An element of `𝔞(top, bottom)` in the chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub top: i64,
    pub bottom: i64,
    pub coords: SparseVec,
}

impl Element {
    pub fn degree(&self) -> i64 {
        self.top - self.bottom
    }

    pub fn basis(top: i64, bottom: i64, idx: usize, cat: &LinearCategory) -> Element {
        Element { top, bottom, coords: SparseVec::unit(idx, cat.field) }
    }

    pub fn identity(cat: &LinearCategory, m: i64) -> Element {
        Element { top: m, bottom: m, coords: cat.identity_vec(m) }
    }

    pub fn generator(cat: &LinearCategory, gen: usize) -> Element {
        let g = &cat.gens[gen];
        Element { top: g.top(), bottom: g.base, coords: cat.gen_vecs[gen].clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!((self.top, self.bottom), (other.top, other.bottom));
        Element { top: self.top, bottom: self.bottom, coords: self.coords.sub(&other.coords) }
    }
}

/// Looks up the generator instance with `label` at `base`.
pub fn generator(cat: &LinearCategory, label: &str, base: i64) -> Option<Element> {
    cat.gens.iter().position(|g| g.label == label && g.base == base).map(|i| Element::generator(cat, i))
}

/// The product `a·b` for `a ∈ 𝔞(j,m)`, `b ∈ 𝔞(n,j)`.
pub fn compose(cat: &LinearCategory, a: &Element, b: &Element) -> Result<Element> {
    if a.top != b.bottom {
        return Err(Error::NotComposable(format!(
            "a in ({},{}) and b in ({},{})",
            a.top, a.bottom, b.top, b.bottom
        )));
    }
    let (n, j, m) = (b.top, a.top, a.bottom);
    Ok(Element { top: n, bottom: m, coords: cat.mul_vec(n, j, m, &a.coords, &b.coords) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub positively_graded: bool,
    pub connected: bool,
    pub locally_finite: bool,
    /// First object with `dim 𝔞(n,n) ≠ 1`, if any.
    pub non_connected_object: Option<i64>,
    pub note: String,
}

pub fn grading_report(cat: &LinearCategory) -> GradingReport {
    let positively_graded = cat.pieces.keys().all(|(n, m)| n >= m);
    let non_connected_object = cat.objects().find(|&n| cat.dim(n, n) != 1);
    GradingReport {
        positively_graded,
        connected: non_connected_object.is_none(),
        locally_finite: true,
        non_connected_object,
        note: "over a field every realized hom-space is finite-dimensional".into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectGenerators {
    pub object: i64,
    /// `(level, new generators at that level)` for every level above the object.
    pub per_level: Vec<(i64, usize)>,
    pub total: usize,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FgReport {
    pub status: Status,
    pub per_object: Vec<ObjectGenerators>,
    /// Object whose ideal keeps needing generators through the horizon.
    pub failing_object: Option<i64>,
    pub reason: String,
}

/// Minimal generators of `𝔞(−,m)_{≥m+1}` level by level, for each `m`.
pub fn generator_counts(cat: &LinearCategory, m: i64) -> ObjectGenerators {
    let mut per_level = Vec::new();
    let mut labels = Vec::new();
    for n in m + 1..=cat.hi {
        let mut ech = Echelon::new(cat.field);
        // everything reached from lower levels of the ideal
        for (gi, g) in cat.gens.iter().enumerate() {
            if g.top() != n || g.base <= m {
                continue;
            }
            for x in 0..cat.dim(g.base, m) {
                let v = cat.mul_vec(n, g.base, m, &SparseVec::unit(x, cat.field), &cat.gen_vecs[gi]);
                ech.insert(&v);
            }
        }
        let dim = cat.dim(n, m);
        for x in 0..dim {
            ech.insert(&cat.eps_vec(n, m, &SparseVec::unit(x, cat.field)));
        }
        let new: Vec<usize> = (0..dim).filter(|&x| !ech.is_pivot(x)).collect();
        for &x in &new {
            labels.push(cat.label(n, m, x));
        }
        per_level.push((n, new.len()));
    }
    let total = per_level.iter().map(|(_, c)| c).sum();
    ObjectGenerators { object: m, per_level, total, labels }
}

pub fn is_finitely_generated_window(cat: &LinearCategory) -> FgReport {
    is_finitely_generated_with(cat, Horizon::default_for(cat.lo, cat.hi))
}

pub fn is_finitely_generated_with(cat: &LinearCategory, h: Horizon) -> FgReport {
    let per_object: Vec<ObjectGenerators> = (cat.lo..cat.hi).map(|m| generator_counts(cat, m)).collect();
    if cat.hi - cat.lo < 2 {
        return FgReport {
            status: Status::Inconclusive,
            per_object,
            failing_object: None,
            reason: "window too small".into(),
        };
    }
    let checkable: Vec<&ObjectGenerators> = per_object.iter().filter(|o| o.object <= h.start - 2).collect();
    if checkable.is_empty() {
        return FgReport {
            status: Status::Inconclusive,
            per_object,
            failing_object: None,
            reason: "no object lies far enough below the horizon".into(),
        };
    }
    let mut status = Status::Pass;
    let mut failing_object = None;
    let mut reason = "no new generators inside the horizon".to_string();
    for o in checkable {
        let in_horizon: Vec<usize> =
            o.per_level.iter().filter(|(n, _)| h.contains(*n)).map(|(_, c)| *c).collect();
        if in_horizon.iter().all(|&c| c > 0) {
            status = Status::Fail;
            failing_object = Some(o.object);
            reason = format!("object {} needs new generators at every horizon level", o.object);
            break;
        }
        if in_horizon.iter().any(|&c| c > 0) && status == Status::Pass {
            status = Status::Inconclusive;
            reason = format!("object {} needs new generators inside the horizon", o.object);
        }
    }
    FgReport { status, per_object, failing_object, reason }
}
