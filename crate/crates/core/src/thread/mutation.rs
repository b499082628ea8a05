use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{cohomology_profile, hom_complex, ChainMap, Complex, ThreadAlgebra};
use crate::error::{Error, Result};
use crate::status::Status;

const RANDOM_TRIALS: usize = 24;

fn concat_columns(parts: Vec<super::complex::Blocks>, rows: usize) -> super::complex::Blocks {
    let mut out = vec![Vec::new(); rows];
    for b in parts {
        for (r, row) in b.into_iter().enumerate() {
            out[r].extend(row);
        }
    }
    out
}

fn require_exceptional(thr: &ThreadAlgebra, e: &Complex) -> Result<()> {
    let t = hom_complex(thr, e, e).table();
    if t.dims.len() == 1 && t.get(0) == thr.unit_rank() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("mutation through a non-exceptional object (RHom(E,E) = {:?})", t.dims)))
    }
}

/// `RHom(E, C) ⊗ E → C` built from cocycle representatives.
pub fn evaluation(thr: &ThreadAlgebra, e: &Complex, c: &Complex) -> (Complex, ChainMap) {
    let hc = hom_complex(thr, e, c);
    let mut src = Complex::zero();
    let mut comps: Vec<(i64, ChainMap)> = Vec::new();
    for &p in hc.dims.keys() {
        for z in hc.ring_representatives(thr, p) {
            src = src.direct_sum(&e.shift(-p));
            comps.push((p, z));
        }
    }
    let mut ev = ChainMap::zero(0);
    for &t in src.terms.keys() {
        let parts = comps.iter().map(|(p, z)| z.block(t - p, e, c)).collect();
        ev.blocks.insert(t, concat_columns(parts, c.term(t).len()));
    }
    (src, ev)
}

/// `C → RHom(C, E)^* ⊗ E`, the dual construction.
pub fn coevaluation(thr: &ThreadAlgebra, c: &Complex, e: &Complex) -> (Complex, ChainMap) {
    let hc = hom_complex(thr, c, e);
    let mut tgt = Complex::zero();
    let mut comps: Vec<ChainMap> = Vec::new();
    for &p in hc.dims.keys() {
        for z in hc.ring_representatives(thr, p) {
            tgt = tgt.direct_sum(&e.shift(p));
            comps.push(z);
        }
    }
    let mut coev = ChainMap::zero(0);
    for &t in c.terms.keys() {
        let mut rows = Vec::new();
        for z in &comps {
            rows.append(&mut z.block(t, c, e));
        }
        coev.blocks.insert(t, rows);
    }
    (tgt, coev)
}

/// `L_E(C)`: the cone of evaluation, minimized.
pub fn left_mutation(thr: &ThreadAlgebra, e: &Complex, c: &Complex) -> Result<Complex> {
    require_exceptional(thr, e)?;
    let (src, ev) = evaluation(thr, e, c);
    Ok(ev.cone(thr, &src, c)?.minimize(thr))
}

/// `R_E(C)`: the shifted cone of coevaluation, minimized.
pub fn right_mutation(thr: &ThreadAlgebra, e: &Complex, c: &Complex) -> Result<Complex> {
    require_exceptional(thr, e)?;
    let (tgt, coev) = coevaluation(thr, c, e);
    Ok(coev.cone(thr, c, &tgt)?.shift(-1).minimize(thr))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// `L_{E_0}…L_{E_k}(C)` or `R_{E_k}…R_{E_0}(C)`.
pub fn composite_mutation(thr: &ThreadAlgebra, es: &[Complex], c: &Complex, side: Side) -> Result<Complex> {
    let mut out = c.clone();
    match side {
        Side::Left => {
            for e in es.iter().rev() {
                out = left_mutation(thr, e, &out)?;
            }
        }
        Side::Right => {
            for e in es {
                out = right_mutation(thr, e, &out)?;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub status: Status,
    pub witness: Option<ChainMap>,
    pub reason: String,
}

fn is_quasi_iso(thr: &ThreadAlgebra, f: &ChainMap, c: &Complex, d: &Complex) -> bool {
    match f.cone(thr, c, d) {
        Ok(cone) => cohomology_profile(thr, &cone).values().all(|t| t.is_zero()),
        Err(_) => false,
    }
}

/// Searches degree-0 cocycles of `Hom(C, D)` for a quasi-isomorphism:
/// first a basis, then seeded random combinations.
pub fn iso_in_derived(thr: &ThreadAlgebra, c: &Complex, d: &Complex, seed: u64) -> IsoReport {
    let (pc, pd) = (cohomology_profile(thr, c), cohomology_profile(thr, d));
    if pc != pd {
        return IsoReport { status: Status::Fail, witness: None, reason: "cohomology dimensions differ".into() };
    }
    if pc.values().all(|t| t.is_zero()) {
        return IsoReport { status: Status::Pass, witness: Some(ChainMap::zero(0)), reason: "both acyclic".into() };
    }
    let hc = hom_complex(thr, c, d);
    let z = hc.cocycles(0);
    if z.is_empty() {
        return IsoReport { status: Status::Fail, witness: None, reason: "no degree-0 chain maps".into() };
    }
    for v in &z {
        let f = hc.to_map(0, v);
        if is_quasi_iso(thr, &f, c, d) {
            return IsoReport { status: Status::Pass, witness: Some(f), reason: "basis cocycle".into() };
        }
    }
    if z.len() == 1 {
        return IsoReport {
            status: Status::Fail,
            witness: None,
            reason: "the only chain maps up to scalars are not quasi-isomorphisms".into(),
        };
    }
    let field = thr.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let mut v = vec![field.zero(); hc.dim(0)];
        for b in &z {
            let c0 = field.from_i64(rng.gen_range(-3..=3));
            for (x, y) in v.iter_mut().zip(b) {
                *x += &(&c0 * y);
            }
        }
        let f = hc.to_map(0, &v);
        if is_quasi_iso(thr, &f, c, d) {
            return IsoReport { status: Status::Pass, witness: Some(f), reason: "random combination".into() };
        }
    }
    IsoReport {
        status: Status::Inconclusive,
        witness: None,
        reason: format!("dimensions agree but none of {} tested chain maps is a quasi-isomorphism", z.len() + RANDOM_TRIALS),
    }
}
