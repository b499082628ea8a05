use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{composite_mutation, hom_complex, iso_in_derived, Complex, RHomTable, Side, ThreadAlgebra, ThreadModule};
use crate::category::LinearCategory;
use crate::error::{Error, Result};
use crate::exact::{Matrix, SparseVec, Vector};
use crate::modules::{direct_sum, is_finitely_generated_module, representable, ModuleMap, WindowModule};
use crate::status::{Horizon, Status};

/// `k ↦ 𝔞(k, n)` on the thread objects, for `n` in the ambient window.
pub fn restricted_representable(full: &LinearCategory, thr: &ThreadAlgebra, n: i64) -> Result<ThreadModule> {
    full.check_object(n)?;
    let cat = &thr.cat;
    let f = cat.field;
    let dims: Vec<usize> = cat.objects().map(|k| full.dim(k, n)).collect();
    let actions = cat
        .gens
        .iter()
        .enumerate()
        .map(|(g, gi)| {
            let (b, t) = (gi.base, gi.top());
            let cols: Vec<Vector> = (0..full.dim(b, n))
                .map(|x| full.mul_vec(t, b, n, &SparseVec::unit(x, f), &cat.gen_vecs[g]).to_dense(full.dim(t, n), f))
                .collect();
            Matrix::from_columns(f, full.dim(t, n), &cols)
        })
        .collect();
    let eps = cat.deformed.then(|| {
        cat.objects()
            .map(|k| full.eps_matrix(k, n).unwrap_or_else(|| Matrix::zeros(f, full.dim(k, n), full.dim(k, n))))
            .collect()
    });
    let m = WindowModule { field: f, lo: cat.lo, hi: cat.hi, dims, actions, eps };
    m.validate(cat)?;
    Ok(m)
}

/// The sum of the Yoneda maps of `(object, element of target)` pairs.
fn cover(cat: &LinearCategory, target: &WindowModule, gens: &[(i64, Vector)]) -> Result<(WindowModule, ModuleMap)> {
    let mut src = WindowModule::zero(cat);
    let mut comps = Vec::new();
    for (i, (k, _)) in gens.iter().enumerate() {
        let r = representable(cat, *k)?;
        src = if i == 0 { r } else { direct_sum(&src, &r) };
    }
    for q in cat.objects() {
        let mut cols = Vec::new();
        for (k, x) in gens {
            cols.extend((0..cat.dim(q, *k)).map(|a| target.act_basis(cat, q, *k, a, x)));
        }
        comps.push(Matrix::from_columns(cat.field, target.dim(q), &cols));
    }
    Ok((src, ModuleMap { comps }))
}

/// Minimal projective resolution, placed in degrees `≤ 0`.
pub fn resolve(thr: &ThreadAlgebra, m: &ThreadModule) -> Result<Complex> {
    let cat = &thr.cat;
    let h = Horizon::default_for(cat.lo, cat.hi);
    let fg = |module: &WindowModule| -> Vec<(i64, Vector)> {
        is_finitely_generated_module(cat, module, h)
            .generators
            .iter()
            .map(|&(n, j)| (n, module.unit_vec(n, j)))
            .collect()
    };
    let mut out = Complex::zero();
    let mut target = m.clone();
    let mut gens = fg(m);
    let mut prev_objects: Vec<i64> = Vec::new();
    for step in 0..=(cat.hi - cat.lo + 2) {
        if gens.is_empty() {
            return Ok(out.normalize());
        }
        let objects: Vec<i64> = gens.iter().map(|(k, _)| *k).collect();
        out.terms.insert(-step, objects.clone());
        if step > 0 {
            // the new generators are elements of the previous free module
            let mut d = vec![vec![SparseVec::new(); objects.len()]; prev_objects.len()];
            for (r, (k, v)) in gens.iter().enumerate() {
                let mut off = 0;
                for (i, &o) in prev_objects.iter().enumerate() {
                    let len = cat.dim(*k, o);
                    d[i][r] = SparseVec::from_dense(&v[off..off + len]);
                    off += len;
                }
            }
            out.diffs.insert(-step, d);
        }
        let (src, map) = cover(cat, &target, &gens)?;
        let kernel = map.kernel(cat, &src);
        let kmod = kernel.as_module(cat, &src);
        gens = fg(&kmod)
            .into_iter()
            .map(|(n, x)| {
                let v = kernel.part(n).basis().iter().zip(&x).fold(src.zero_vec(n), |mut acc, (b, c)| {
                    for (a, y) in acc.iter_mut().zip(b) {
                        *a += &(c * y);
                    }
                    acc
                });
                (n, v)
            })
            .collect();
        target = src;
        prev_objects = objects;
    }
    Err(Error::Precondition("resolution does not terminate on the thread".into()))
}

/// The representative of `O(j) = 𝔞(−, −j)`: a projective on the thread, or
/// the resolution of the restricted representable for objects left of it.
pub fn representative(full: &LinearCategory, thr: &ThreadAlgebra, j: i64) -> Result<Complex> {
    let n = -j;
    if thr.cat.contains(n) {
        return Ok(Complex::projective(n));
    }
    if n < thr.lo() && full.contains(n) {
        let c = resolve(thr, &restricted_representable(full, thr, n)?)?;
        c.check(thr)?;
        return Ok(c);
    }
    Err(Error::Precondition(format!("O({j}) is not reachable from the thread inside the window; obtain it by mutation")))
}

pub fn helix_family(
    full: &LinearCategory,
    thr: &ThreadAlgebra,
    twists: std::ops::RangeInclusive<i64>,
) -> Result<BTreeMap<i64, Complex>> {
    twists.map(|j| Ok((j, representative(full, thr, j)?))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairTable {
    pub i: usize,
    pub j: usize,
    pub table: RHomTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub tables: Vec<PairTable>,
    pub exceptional: Status,
    pub strong: Status,
    /// `RHom(E_i, E_j)` in degree 0 for all listed `i < j`.
    pub geometric: Status,
}

pub fn sequence_report(thr: &ThreadAlgebra, es: &[Complex]) -> SequenceReport {
    let pairs: Vec<(usize, usize)> = (0..es.len()).flat_map(|i| (0..es.len()).map(move |j| (i, j))).collect();
    let tables: Vec<PairTable> = pairs
        .par_iter()
        .map(|&(i, j)| PairTable { i, j, table: hom_complex(thr, &es[i], &es[j]).table() })
        .collect();
    let mut exceptional = true;
    let mut forward = true;
    for t in &tables {
        if t.i == t.j {
            exceptional &= t.table.dims.len() == 1 && t.table.get(0) == thr.unit_rank();
        } else if t.i > t.j {
            exceptional &= t.table.is_zero();
        } else {
            forward &= t.table.concentrated_in(0);
        }
    }
    SequenceReport {
        tables,
        exceptional: Status::from_bool(exceptional),
        strong: Status::from_bool(exceptional && forward),
        geometric: Status::from_bool(forward),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HelixCheck {
    pub i: i64,
    pub status: Status,
    pub reason: String,
    /// The shift that would have matched, when the requested one does not.
    pub matching_shift: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HelixReport {
    pub n: usize,
    pub d: i64,
    pub checks: Vec<HelixCheck>,
    pub status: Status,
    pub note: String,
}

/// Checks `E_{i−n} ≅ L_{(E_{i−n+1},…,E_{i−1})}(E_i)[1−d]` for every `i`
/// whose predecessors are all in the family.
pub fn verify_helix(thr: &ThreadAlgebra, family: &BTreeMap<i64, Complex>, n: usize, d: i64, seed: u64) -> HelixReport {
    let n_i = n as i64;
    let checkable: Vec<i64> = family.keys().copied().filter(|&i| (i - n_i..=i).all(|k| family.contains_key(&k))).collect();
    let checks: Vec<HelixCheck> = checkable
        .par_iter()
        .map(|&i| {
            let es: Vec<Complex> = (i - n_i + 1..i).map(|k| family[&k].clone()).collect();
            let target = &family[&(i - n_i)];
            let l = match composite_mutation(thr, &es, &family[&i], Side::Left) {
                Ok(l) => l,
                Err(e) => return HelixCheck { i, status: Status::Fail, reason: e.to_string(), matching_shift: None },
            };
            let r = iso_in_derived(thr, &l.shift(1 - d), target, seed);
            if r.status != Status::Fail {
                return HelixCheck { i, status: r.status, reason: r.reason, matching_shift: None };
            }
            let found = (1 - d - 2 * n_i..=1 - d + 2 * n_i)
                .filter(|&s| s != 1 - d)
                .find(|&s| iso_in_derived(thr, &l.shift(s), target, seed).status == Status::Pass);
            let reason = match found {
                Some(s) => format!("shift mismatch: [1−d] = [{}] but the mutation matches E_{} after [{s}]", 1 - d, i - n_i),
                None => r.reason,
            };
            HelixCheck { i, status: Status::Fail, reason, matching_shift: found }
        })
        .collect();
    let status = if checks.is_empty() { Status::Inconclusive } else { Status::all(checks.iter().map(|c| c.status)) };
    HelixReport {
        n,
        d,
        checks,
        status,
        note: "compact generation is assumed through the derived equivalence with the thread".into(),
    }
}
