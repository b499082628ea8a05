use std::collections::HashMap;

use serde::Serialize;

use super::HochschildComplex;
use crate::category::LinearCategory;
use crate::error::{Error, Result};
use crate::exact::{DualScalar, Matrix, SparseVec, Vector};
use crate::status::Status;

/// A first-order deformation `a∘b + ε·μ₂(a,b)` of the base of `hc`, with
/// `μ₂` given in the coordinates of `C²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationDatum {
    pub mu2: SparseVec,
    pub provenance: String,
}

impl DeformationDatum {
    pub fn trivial() -> DeformationDatum {
        DeformationDatum { mu2: SparseVec::new(), provenance: "trivial".into() }
    }

    pub fn coboundary(hc: &HochschildComplex, gamma: &SparseVec) -> DeformationDatum {
        DeformationDatum { mu2: hc.apply(1, gamma), provenance: "coboundary".into() }
    }
}

/// Index of each base basis element among the non-ε labels of the deformed
/// piece with the same word.
fn section(deformed: &LinearCategory, base: &LinearCategory, n: i64, m: i64) -> Result<Vec<usize>> {
    let (bp, dp) = match (base.piece(n, m), deformed.piece(n, m)) {
        (Some(b), Some(d)) => (b, d),
        _ => return Err(Error::ObjectOutOfRange(n)),
    };
    bp.labels
        .iter()
        .map(|l| {
            dp.labels
                .iter()
                .position(|d| !d.eps && d.word == l.word)
                .ok_or(Error::NotFlat { top: n, bottom: m })
        })
        .collect()
}

/// Reads `μ₂` off a flat deformed realization: `s(a)·s(b) = s(ab) + ε·s(μ₂(a,b))`
/// for the section `s` matching basis words.
pub fn mu2_from_deformed(hc: &HochschildComplex, deformed: &LinearCategory) -> Result<DeformationDatum> {
    let base = &hc.cat;
    let f = base.field;
    let mut sections: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let mut eps_sec: HashMap<(i64, i64), Matrix> = HashMap::new();
    for &(n, m) in base.pieces.keys() {
        let s = section(deformed, base, n, m)?;
        let dim = deformed.dim(n, m);
        let cols: Vec<Vector> = s
            .iter()
            .map(|&k| deformed.eps_vec(n, m, &SparseVec::unit(k, f)).to_dense(dim, f))
            .collect();
        // ε·s is injective exactly when the piece is free
        let e = Matrix::from_columns(f, dim, &cols);
        if e.rank() != s.len() {
            return Err(Error::NotFlat { top: n, bottom: m });
        }
        eps_sec.insert((n, m), e);
        sections.insert((n, m), s);
    }
    let mut pairs = Vec::new();
    for c in hc.cells(2) {
        let (x0, x1, x2) = (c.objs[0], c.objs[1], c.objs[2]);
        let width = base.dim(x2, x0);
        if width == 0 {
            continue;
        }
        let a = sections[&(x1, x0)][c.args[0]];
        let b = sections[&(x2, x1)][c.args[1]];
        let prod = deformed.mul_basis(x2, x1, x0, a, b).clone();
        let s = &sections[&(x2, x0)];
        // drop s(ab): the non-ε coordinates
        let rest: SparseVec = prod.iter().filter(|(i, _)| !s.contains(i)).cloned().collect();
        let rhs = rest.to_dense(deformed.dim(x2, x0), f);
        let mu = eps_sec[&(x2, x0)].solve(&rhs)?.ok_or(Error::NotFlat { top: x2, bottom: x0 })?;
        let off = hc.offset(c).unwrap();
        for (w, v) in mu.into_iter().enumerate() {
            if !v.is_zero() {
                pairs.push((off + w, v));
            }
        }
    }
    Ok(DeformationDatum { mu2: SparseVec::from_pairs(pairs), provenance: "deformed relations".into() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub status: Status,
    /// Nonzero coordinates of `δμ₂`.
    pub cochain_violations: usize,
    /// First non-associative basis triple `(x0, x1, x2, x3)` over the dual numbers.
    pub associativity_violation: Option<(i64, i64, i64, i64)>,
    pub paths_agree: bool,
}

type DualVec = Vec<DualScalar>;

/// The deformed product of dual vectors `x ∈ 𝔞(j,m)[ε]`, `y ∈ 𝔞(n,j)[ε]`.
fn dual_mul(hc: &HochschildComplex, mu2: &SparseVec, n: i64, j: i64, m: i64, x: &DualVec, y: &DualVec) -> DualVec {
    let cat = &hc.cat;
    let f = cat.field;
    let mut out = vec![DualScalar::zero(f); cat.dim(n, m)];
    for (a, xa) in x.iter().enumerate() {
        for (b, yb) in y.iter().enumerate() {
            if xa.is_zero() || yb.is_zero() {
                continue;
            }
            let c = xa * yb;
            for (w, s) in cat.mul_basis(n, j, m, a, b).iter() {
                out[*w] = &out[*w] + &(&c * &DualScalar::from_scalar(s.clone()));
            }
            // normalized: μ₂ vanishes on identities
            if m < j && j < n {
                let cell = super::Cell { objs: vec![m, j, n], args: vec![a, b] };
                let off = hc.offset(&cell).unwrap();
                for (w, o) in out.iter_mut().enumerate() {
                    if let Some(v) = mu2.get(off + w) {
                        *o = &*o + &(&c * &DualScalar::new(f.zero(), v.clone()));
                    }
                }
            }
        }
    }
    out
}

fn dual_unit(hc: &HochschildComplex, n: i64, m: i64, i: usize) -> DualVec {
    let f = hc.cat.field;
    let mut v = vec![DualScalar::zero(f); hc.cat.dim(n, m)];
    v[i] = DualScalar::one(f);
    v
}

/// Checks `δμ₂ = 0` and, independently, associativity of the deformed product
/// on all composable basis triples.
pub fn cocycle_check(hc: &HochschildComplex, d: &DeformationDatum) -> CocycleReport {
    let cochain_violations = hc.apply(2, &d.mu2).len();
    let cat = &hc.cat;
    let mut associativity_violation = None;
    'outer: for x0 in cat.objects() {
        for x1 in x0..=cat.hi {
            for x2 in x1..=cat.hi {
                for x3 in x2..=cat.hi {
                    for a in 0..cat.dim(x1, x0) {
                        for b in 0..cat.dim(x2, x1) {
                            let ab = dual_mul(hc, &d.mu2, x2, x1, x0, &dual_unit(hc, x1, x0, a), &dual_unit(hc, x2, x1, b));
                            for c in 0..cat.dim(x3, x2) {
                                let cu = dual_unit(hc, x3, x2, c);
                                let left = dual_mul(hc, &d.mu2, x3, x2, x0, &ab, &cu);
                                let bc = dual_mul(hc, &d.mu2, x3, x2, x1, &dual_unit(hc, x2, x1, b), &cu);
                                let right = dual_mul(hc, &d.mu2, x3, x1, x0, &dual_unit(hc, x1, x0, a), &bc);
                                if left != right {
                                    associativity_violation = Some((x0, x1, x2, x3));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let paths_agree = (cochain_violations == 0) == associativity_violation.is_none();
    CocycleReport {
        status: Status::from_bool(cochain_violations == 0 && associativity_violation.is_none()),
        cochain_violations,
        associativity_violation,
        paths_agree,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaugeReport {
    pub status: Status,
    /// `γ` with `δγ = μ₂ − μ₂′`, in the coordinates of `C¹`.
    #[serde(skip)]
    pub gamma: Option<SparseVec>,
    pub gamma_support: usize,
    /// `δγ` recomputed and compared.
    pub verified: bool,
}

/// Solves `μ₂ − μ₂′ = δγ`; the system is linear so a failure is exact.
pub fn gauge_equivalent(hc: &HochschildComplex, d1: &DeformationDatum, d2: &DeformationDatum) -> GaugeReport {
    let diff = d1.mu2.sub(&d2.mu2);
    match hc.solve(1, &diff) {
        Some(g) => {
            let verified = hc.apply(1, &g) == diff;
            GaugeReport { status: Status::from_bool(verified), gamma_support: g.len(), gamma: Some(g), verified }
        }
        None => GaugeReport { status: Status::Fail, gamma: None, gamma_support: 0, verified: false },
    }
}

/// Restriction of a datum to the Hochschild complex of a full subcategory.
pub fn restrict_deformation(hc: &HochschildComplex, d: &DeformationDatum, thread: &HochschildComplex) -> Result<DeformationDatum> {
    let mu2 = hc.restrict_to(thread, 2, &d.mu2);
    let out = DeformationDatum { mu2, provenance: format!("{} restricted to [{}, {}]", d.provenance, thread.cat.lo, thread.cat.hi) };
    if thread.max_arity > 2 && !thread.apply(2, &out.mu2).is_empty() {
        return Err(Error::Precondition("restricted cochain is not a cocycle".into()));
    }
    Ok(out)
}
