use serde::Serialize;

use super::{default_interior, HochschildComplex};
use crate::category::LinearCategory;
use crate::error::{Error, Result};
use crate::status::Status;
use crate::thread::{hom_complex, representative, ThreadAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub interior: (i64, i64),
    pub thread: (i64, i64),
    pub interior_h2: usize,
    pub thread_h2: usize,
    /// Rank of `H²(interior) → H²(thread)` induced by restriction.
    pub restriction_rank: usize,
    pub status: Status,
    pub note: String,
}

/// First-order shadow of restricting deformations to a thread: compares `H²`
/// of the interior window with `H²` of the thread and ranks the restriction.
pub fn restriction_equivalence_probe(
    cat: &LinearCategory,
    interior: Option<(i64, i64)>,
    i: i64,
    l: i64,
) -> Result<ProbeReport> {
    let (a, b) = interior.unwrap_or_else(|| default_interior(cat));
    let (dlo, dhi) = default_interior(cat);
    if a < dlo || b > dhi || a > b {
        return Err(Error::Precondition(format!("interior [{a},{b}] must lie inside [{dlo},{dhi}]")));
    }
    if i - l < a || i > b || l < 0 {
        return Err(Error::Precondition(format!("thread [{}, {i}] is not inside the interior [{a},{b}]", i - l)));
    }
    let big = HochschildComplex::new(&cat.restrict(a, b)?, 3)?;
    let small = HochschildComplex::new(&cat.restrict(i - l, i)?, 3)?;
    let reps = big.representatives(2);
    let restricted: Vec<_> = reps.iter().map(|z| big.restrict_to(&small, 2, z)).collect();
    let thread_h2 = small.dims().cohomology[2];
    let restriction_rank = small.class_rank(2, &restricted);
    let status = Status::from_bool(reps.len() == thread_h2 && restriction_rank == thread_h2);
    Ok(ProbeReport {
        interior: (a, b),
        thread: (i - l, i),
        interior_h2: reps.len(),
        thread_h2,
        restriction_rank,
        status,
        note: "bijectivity is certified on first-order classes only".into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtPair {
    pub m: i64,
    pub n: i64,
    pub ext1: usize,
    pub ext2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    pub pairs: Vec<ExtPair>,
    pub status: Status,
    pub note: String,
}

/// `Ext^1, Ext^2(O(m), O(n)) = 0` for `m ≤ n` among the given twists. The
/// coefficient space only contributes a multiplicity over a field.
pub fn ext_vanishing_check(full: &LinearCategory, thr: &ThreadAlgebra, twists: &[i64]) -> Result<ExtReport> {
    let reps: Vec<_> = twists.iter().map(|&j| representative(full, thr, j)).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for (x, &m) in twists.iter().enumerate() {
        for (y, &n) in twists.iter().enumerate() {
            if m > n {
                continue;
            }
            let t = hom_complex(thr, &reps[x], &reps[y]).table();
            pairs.push(ExtPair { m, n, ext1: t.get(1), ext2: t.get(2) });
        }
    }
    let status = Status::from_bool(pairs.iter().all(|p| p.ext1 == 0 && p.ext2 == 0));
    Ok(ExtReport {
        pairs,
        status,
        note: "pairs with m > n are outside the hypothesis and are not checked".into(),
    })
}
