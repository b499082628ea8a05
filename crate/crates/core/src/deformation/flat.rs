use serde::Serialize;

use crate::category::LinearCategory;
use crate::error::{Error, Result};
use crate::exact::free_rank_from_action;
use crate::status::{Horizon, Status};
use crate::tails::reduction_matrix;
use crate::thread::{Complex, ThreadAlgebra};
use crate::zalgebra::{is_finitely_generated_with, realize_deformed, realize_window, GradedPresentation, WindowAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceFlatness {
    pub top: i64,
    pub bottom: i64,
    pub base_dim: usize,
    pub k_dim: usize,
    pub free_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub status: Status,
    pub pieces: Vec<PieceFlatness>,
    /// First piece that is not free of the base rank.
    pub failing: Option<(i64, i64)>,
}

#[derive(Clone, Debug)]
pub struct DeformedWindow {
    pub base: WindowAlgebra,
    pub deformed: LinearCategory,
    pub flatness: FlatnessReport,
}

pub fn flatness(base: &LinearCategory, deformed: &LinearCategory) -> FlatnessReport {
    let mut pieces = Vec::new();
    let mut failing = None;
    for &(n, m) in deformed.pieces.keys() {
        let k_dim = deformed.dim(n, m);
        let free_rank = deformed.eps_matrix(n, m).and_then(|e| free_rank_from_action(k_dim, &e));
        let base_dim = base.dim(n, m);
        if free_rank != Some(base_dim) && failing.is_none() {
            failing = Some((n, m));
        }
        pieces.push(PieceFlatness { top: n, bottom: m, base_dim, k_dim, free_rank });
    }
    FlatnessReport { status: Status::from_bool(failing.is_none()), pieces, failing }
}

/// Realizes base and deformation on `[lo, hi]` and checks every piece is free.
pub fn deform_window(p: &GradedPresentation, lo: i64, hi: i64) -> Result<DeformedWindow> {
    p.validate()?;
    let base = realize_window(&p.reduction(), lo, hi)?;
    let deformed = realize_deformed(p, lo, hi)?;
    let flatness = flatness(&base, &deformed);
    Ok(DeformedWindow { base, deformed, flatness })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftRow {
    pub condition: String,
    pub base: Status,
    pub deformed: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub rows: Vec<LiftRow>,
    /// Pass when every condition holding for the base holds for the deformation.
    pub status: Status,
}

/// Connected, positively graded, locally finite and finitely generated, for
/// the base over `k` and the deformation over the dual numbers.
pub fn finiteness_lift_report(base: &LinearCategory, deformed: &LinearCategory, h: Horizon) -> Result<LiftReport> {
    if flatness(base, deformed).status != Status::Pass {
        return Err(Error::Precondition("finiteness lifting needs a flat deformation".into()));
    }
    let diag_rank = |c: &LinearCategory, n: i64| -> Option<usize> {
        if c.deformed {
            c.eps_matrix(n, n).and_then(|e| free_rank_from_action(c.dim(n, n), &e))
        } else {
            Some(c.dim(n, n))
        }
    };
    let connected = |c: &LinearCategory| Status::from_bool(c.objects().all(|n| diag_rank(c, n) == Some(1)));
    let positive = |c: &LinearCategory| Status::from_bool(c.pieces.keys().all(|(n, m)| n >= m));
    let rows = vec![
        LiftRow { condition: "connected".into(), base: connected(base), deformed: connected(deformed) },
        LiftRow { condition: "positively graded".into(), base: positive(base), deformed: positive(deformed) },
        LiftRow { condition: "locally finite".into(), base: Status::Pass, deformed: Status::Pass },
        LiftRow {
            condition: "finitely generated".into(),
            base: is_finitely_generated_with(base, h).status,
            deformed: is_finitely_generated_with(deformed, h).status,
        },
    ];
    let status = Status::all(rows.iter().map(|r| if r.base == Status::Pass { r.deformed } else { Status::Pass }));
    Ok(LiftReport { rows, status })
}

/// `k ⊗_R C`: every entry of a complex over a deformed thread reduced mod ε.
pub fn reduce_complex(deformed: &ThreadAlgebra, base: &ThreadAlgebra, c: &Complex) -> Result<Complex> {
    let mut out = c.clone();
    for (p, d) in out.diffs.iter_mut() {
        let (src, dst) = (c.term(*p), c.term(p + 1));
        for (u, row) in d.iter_mut().enumerate() {
            for (s, e) in row.iter_mut().enumerate() {
                let r = reduction_matrix(&deformed.cat, &base.cat, src[s], dst[u])?;
                let v = r.mul_vec(&e.to_dense(deformed.cat.dim(src[s], dst[u]), base.field()))?;
                *e = crate::exact::SparseVec::from_dense(&v);
            }
        }
    }
    let out = out.normalize();
    out.check(base)?;
    Ok(out)
}
