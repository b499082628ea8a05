//! Homs in the quotient by torsion, ampleness and the Z-generating checks.

use serde::Serialize;

use crate::category::LinearCategory;
use crate::error::Result;
use crate::exact::{Matrix, SparseSolver, SparseVec, Subspace, Vector};
use crate::modules::{direct_sum, representable, yoneda_map, ModuleMap, Submodule, WindowModule};
use crate::status::{Horizon, Status};
use crate::zalgebra::{is_finitely_generated_with, Element};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QHom {
    /// `(n, dim Hom(M_{≥n}, N))`; the top level is left out, nothing constrains it.
    pub dims: Vec<(i64, usize)>,
    /// `(n, rank of Hom(M_{≥n}, N) → Hom(M_{≥n+1}, N))`.
    pub restriction_ranks: Vec<(i64, usize)>,
    pub stabilization: Option<i64>,
    pub stable_dim: Option<usize>,
    pub status: Status,
    pub reason: String,
}

/// Offsets of the blocks `φ_k : M_k → N_k` for `k ≥ n`.
fn layout(src: &WindowModule, dst: &WindowModule, n: i64) -> (Vec<(i64, usize)>, usize) {
    let mut offs = Vec::new();
    let mut total = 0;
    for k in n..=src.hi {
        offs.push((k, total));
        total += src.dim(k) * dst.dim(k);
    }
    (offs, total)
}

/// Basis of `Hom(M_{≥n}, N)` as flattened block vectors.
fn hom_from_tail(cat: &LinearCategory, src: &WindowModule, dst: &WindowModule, n: i64) -> (Vec<SparseVec>, Vec<(i64, usize)>) {
    let (offs, total) = layout(src, dst, n);
    let off = |k: i64| offs.iter().find(|(j, _)| *j == k).map(|(_, o)| *o).unwrap();
    // variable (k, r, c) is entry (r, c) of φ_k; constraint rows are numbered
    // per generator block
    let mut cols: Vec<Vec<(usize, crate::exact::Scalar)>> = vec![Vec::new(); total];
    let mut row = 0usize;
    let mut add = |var: usize, r: usize, v: crate::exact::Scalar| {
        if !v.is_zero() {
            cols[var].push((r, v));
        }
    };
    for (g, gi) in cat.gens.iter().enumerate() {
        let (b, t) = (gi.base, gi.top());
        if b < n {
            continue;
        }
        let (am, an) = (&src.actions[g], &dst.actions[g]);
        let (db, dt, eb) = (src.dim(b), src.dim(t), dst.dim(b));
        // (φ_t A^M − A^N φ_b)[i][j] for i < dim N_t, j < dim M_b
        let et = dst.dim(t);
        for i in 0..et {
            for j in 0..db {
                for l in 0..dt {
                    add(off(t) + i * dt + l, row, am.get(l, j).clone());
                }
                for l in 0..eb {
                    add(off(b) + l * db + j, row, -an.get(i, l));
                }
                row += 1;
            }
        }
    }
    if let (Some(em), Some(en)) = (&src.eps, &dst.eps) {
        for k in n..=src.hi {
            let idx = (k - src.lo) as usize;
            let (dm, dn) = (src.dim(k), dst.dim(k));
            for i in 0..dn {
                for j in 0..dm {
                    for l in 0..dm {
                        add(off(k) + i * dm + l, row, em[idx].get(l, j).clone());
                    }
                    for l in 0..dn {
                        add(off(k) + l * dm + j, row, -en[idx].get(i, l));
                    }
                    row += 1;
                }
            }
        }
    }
    let columns: Vec<SparseVec> = cols.into_iter().map(SparseVec::from_pairs).collect();
    (SparseSolver::new(cat.field, &columns).kernel().to_vec(), offs)
}

pub fn qhom(cat: &LinearCategory, src: &WindowModule, dst: &WindowModule, h: Horizon) -> QHom {
    let mut dims = Vec::new();
    let mut restriction_ranks = Vec::new();
    let tops: Vec<i64> = (cat.lo..cat.hi).collect();
    let spaces: Vec<(i64, Vec<SparseVec>, Vec<(i64, usize)>)> =
        tops.iter().map(|&n| { let (b, o) = hom_from_tail(cat, src, dst, n); (n, b, o) }).collect();
    for (n, basis, _) in &spaces {
        dims.push((*n, basis.len()));
    }
    for w in spaces.windows(2) {
        let (n, basis, offs) = (&w[0].0, &w[0].1, &w[0].2);
        // dropping φ_n keeps the coordinates from the next block on
        let cut = offs[1].1;
        let restricted: Vec<Vector> = basis
            .iter()
            .map(|v| v.slice(cut..usize::MAX).to_dense(total_len(offs, src, dst) - cut, cat.field))
            .collect();
        let rank = Subspace::new(cat.field, total_len(offs, src, dst) - cut, &restricted).dim();
        restriction_ranks.push((*n, rank));
    }
    let iso_at = |n: i64| -> bool {
        let d0 = dims.iter().find(|(k, _)| *k == n).map(|x| x.1);
        let d1 = dims.iter().find(|(k, _)| *k == n + 1).map(|x| x.1);
        let r = restriction_ranks.iter().find(|(k, _)| *k == n).map(|x| x.1);
        matches!((d0, d1, r), (Some(a), Some(b), Some(c)) if a == b && b == c)
    };
    let last = cat.hi - 1;
    let mut stabilization = None;
    for n in (cat.lo..=last).rev() {
        if n == last || iso_at(n) {
            stabilization = Some(n);
        } else {
            break;
        }
    }
    let stable_dim = stabilization.and_then(|s| dims.iter().find(|(k, _)| *k == s).map(|x| x.1));
    let (status, reason) = match stabilization {
        Some(s) if s <= h.start && s < last => (Status::Pass, format!("restriction maps are bijective from {s} on")),
        Some(s) => (Status::Inconclusive, format!("stabilizes only at {s}, inside the horizon")),
        None => (Status::Inconclusive, "no stabilization".into()),
    };
    QHom {
        dims,
        restriction_ranks,
        stabilization: if status == Status::Pass { stabilization } else { None },
        stable_dim: if status == Status::Pass { stable_dim } else { None },
        status,
        reason,
    }
}

fn total_len(offs: &[(i64, usize)], src: &WindowModule, dst: &WindowModule) -> usize {
    let (k, o) = *offs.last().unwrap();
    o + src.dim(k) * dst.dim(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmpleReport {
    pub status: Status,
    /// `(m, n, k)` with `𝔞(n,m)·𝔞(k,n) ≠ 𝔞(k,m)`.
    pub failing: Option<(i64, i64, i64)>,
}

fn products_span(cat: &LinearCategory, m: i64, n: i64, k: i64) -> usize {
    let f = cat.field;
    let vecs: Vec<Vector> = (0..cat.dim(n, m))
        .flat_map(|a| (0..cat.dim(k, n)).map(move |b| (a, b)))
        .map(|(a, b)| cat.mul_basis(k, n, m, a, b).to_dense(cat.dim(k, m), f))
        .collect();
    Subspace::new(f, cat.dim(k, m), &vecs).dim()
}

/// Surjectivity of `𝔞(n,m) ⊗ 𝔞(k,n) → 𝔞(k,m)` for `m < n ≤ k`, `k` in the horizon.
pub fn check_ample(cat: &LinearCategory, h: Horizon) -> AmpleReport {
    let mut status = Status::Pass;
    let mut failing = None;
    for m in cat.objects() {
        for n in m + 1..=cat.hi {
            for k in n.max(h.start)..=cat.hi {
                if products_span(cat, m, n, k) < cat.dim(k, m) {
                    let s = if k == cat.hi { Status::Fail } else { Status::Inconclusive };
                    if (s == Status::Fail || failing.is_none())
                        && status != Status::Fail {
                            failing = Some((m, n, k));
                        }
                    status = status.and(s);
                }
            }
        }
    }
    AmpleReport { status, failing }
}

/// The combined condition: for all `m < n`, the submodule of `𝔞(−,m)`
/// generated by `𝔞(n,m)` contains the horizon levels. Computed by closure.
pub fn check_ab(cat: &LinearCategory, h: Horizon) -> Result<Status> {
    let mut status = Status::Pass;
    for m in cat.objects() {
        let rep = representable(cat, m)?;
        for n in m + 1..=cat.hi {
            let xs: Vec<(i64, Vector)> = (0..cat.dim(n, m)).map(|j| (n, rep.unit_vec(n, j))).collect();
            let s = Submodule::generated(cat, &rep, &xs);
            for k in n.max(h.start)..=cat.hi {
                if !s.part(k).is_full() {
                    status = status.and(if k == cat.hi { Status::Fail } else { Status::Inconclusive });
                }
            }
        }
    }
    let fg = is_finitely_generated_with(cat, h).status;
    Ok(status.and(fg))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TProjectiveReport {
    pub status: Status,
    pub n0: Option<i64>,
}

/// Least `n0` such that `f·a` lifts through `c` for all `a ∈ 𝔞(n,m)`, `n ≥ n0`.
pub fn check_t_projective(
    cat: &LinearCategory,
    c: &ModuleMap,
    src: &WindowModule,
    dst: &WindowModule,
    m: i64,
    f: &[crate::exact::Scalar],
    h: Horizon,
) -> Result<TProjectiveReport> {
    c.validate(cat, src, dst)?;
    let image = c.image(cat, dst);
    let lifts = |n: i64| (0..cat.dim(n, m)).all(|a| image.part(n).contains(&dst.act_basis(cat, n, m, a, f)));
    let mut n0 = None;
    for n in (m..=cat.hi).rev() {
        if lifts(n) {
            n0 = Some(n);
        } else {
            break;
        }
    }
    let status = match n0 {
        Some(n) if h.certifies(m, n) => Status::Pass,
        Some(_) => Status::Inconclusive,
        None => Status::Fail,
    };
    Ok(TProjectiveReport { status, n0 })
}

/// `⊕ 𝔞(−,top(a)) → 𝔞(−,m)` summing the Yoneda maps of the given elements.
pub fn cover_map(cat: &LinearCategory, m: i64, elements: &[Element]) -> Result<(WindowModule, ModuleMap)> {
    let mut sum: Option<WindowModule> = None;
    let mut comps: Vec<Matrix> = cat.objects().map(|n| Matrix::zeros(cat.field, cat.dim(n, m), 0)).collect();
    for a in elements {
        let rep = representable(cat, a.top)?;
        let y = yoneda_map(cat, a)?;
        comps = comps.iter().zip(&y.comps).map(|(x, z)| x.hstack(z)).collect::<Result<_>>()?;
        sum = Some(match sum {
            None => rep,
            Some(s) => direct_sum(&s, &rep),
        });
    }
    let module = match sum {
        Some(s) => s,
        None => WindowModule::zero(cat),
    };
    Ok((module, ModuleMap { comps }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZgenReport {
    pub ample: AmpleReport,
    pub t_projective: Status,
    /// `(m, n0)` for the canonical cover `⊕ 𝔞(−,m+1) → 𝔞(−,m)` and `f = 1_m`.
    pub t_projective_levels: Vec<(i64, Option<i64>)>,
    pub t_full_faithful: Status,
    pub finitely_generated: Status,
    pub ab_path: Status,
    pub status: Status,
    pub notes: Vec<String>,
}

pub fn zgen_report(cat: &LinearCategory, h: Horizon) -> Result<ZgenReport> {
    let ample = check_ample(cat, h);
    let mut t_projective = Status::Pass;
    let mut levels = Vec::new();
    for m in cat.objects().filter(|&m| m < h.start) {
        let elements: Vec<Element> = (0..cat.dim(m + 1, m)).map(|j| Element::basis(m + 1, m, j, cat)).collect();
        let (src, c) = cover_map(cat, m, &elements)?;
        let dst = representable(cat, m)?;
        let one = dst.unit_vec(m, cat.identity(m));
        let r = check_t_projective(cat, &c, &src, &dst, m, &one, h)?;
        levels.push((m, r.n0));
        t_projective = t_projective.and(r.status);
    }
    let finitely_generated = is_finitely_generated_with(cat, h).status;
    let ab_path = check_ab(cat, h)?;
    let t_full_faithful = Status::Pass;
    let status = Status::all([ample.status, t_projective, t_full_faithful, finitely_generated]);
    let notes = vec![
        "u is the identity on representables, so t-fullness and t-faithfulness hold by construction".into(),
        "the hypothesis that L_tails is a topology can only be falsified inside a window".into(),
    ];
    Ok(ZgenReport { ample, t_projective, t_projective_levels: levels, t_full_faithful, finitely_generated, ab_path, status, notes })
}
