use std::collections::BTreeMap;

use crate::category::LinearCategory;
use crate::error::{Error, Result};
use crate::exact::{Field, SparseVec};
use crate::modules::WindowModule;

/// Right modules over a thread are modules over its restricted category.
pub type ThreadModule = WindowModule;

/// The restriction of a window category to `i−l..=i`, viewed as one
/// finite-dimensional algebra with orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct ThreadAlgebra {
    pub cat: LinearCategory,
    /// Total basis: `(n, m, index in 𝔞(n,m))`.
    pub basis: Vec<(i64, i64, usize)>,
    offsets: BTreeMap<(i64, i64), usize>,
}

pub fn extract_thread(cat: &LinearCategory, i: i64, l: i64) -> Result<ThreadAlgebra> {
    if l < 0 || !cat.contains(i - l) || !cat.contains(i) {
        return Err(Error::Precondition(format!(
            "thread [{}, {i}] is not inside the window [{}, {}]",
            i - l,
            cat.lo,
            cat.hi
        )));
    }
    ThreadAlgebra::new(cat.restrict(i - l, i)?)
}

impl ThreadAlgebra {
    pub fn new(cat: LinearCategory) -> Result<ThreadAlgebra> {
        let mut basis = Vec::new();
        let mut offsets = BTreeMap::new();
        for m in cat.objects() {
            for n in m..=cat.hi {
                offsets.insert((n, m), basis.len());
                basis.extend((0..cat.dim(n, m)).map(|a| (n, m, a)));
            }
        }
        Ok(ThreadAlgebra { cat, basis, offsets })
    }

    pub fn field(&self) -> Field {
        self.cat.field
    }

    pub fn lo(&self) -> i64 {
        self.cat.lo
    }

    pub fn hi(&self) -> i64 {
        self.cat.hi
    }

    pub fn objects(&self) -> impl Iterator<Item = i64> {
        self.cat.objects()
    }

    /// k-dimension of the ground ring: 2 over the dual numbers.
    pub fn unit_rank(&self) -> usize {
        if self.cat.deformed {
            2
        } else {
            1
        }
    }

    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn offset(&self, n: i64, m: i64) -> usize {
        self.offsets[&(n, m)]
    }

    /// The idempotent `e_j` in the total basis.
    pub fn idempotent(&self, j: i64) -> usize {
        self.offset(j, j) + self.cat.identity(j)
    }

    /// Product of two total basis elements.
    pub fn multiply(&self, u: usize, v: usize) -> SparseVec {
        let (j, m, a) = self.basis[u];
        let (n, j2, b) = self.basis[v];
        if j != j2 {
            return SparseVec::new();
        }
        self.cat.mul_basis(n, j, m, a, b).shift(self.offset(n, m))
    }

    /// Associativity on the total basis and `Σ e_j = 1`.
    pub fn check(&self) -> Result<()> {
        if let Some((n, j, k, m)) = self.cat.associativity_violation() {
            return Err(Error::Presentation(format!("associativity fails on ({n},{j},{k},{m})")));
        }
        let one: SparseVec = self.objects().map(|j| (self.idempotent(j), self.field().one())).collect();
        for u in 0..self.total_dim() {
            let unit = SparseVec::unit(u, self.field());
            let left: SparseVec = one.iter().fold(SparseVec::new(), |acc, (e, _)| acc.add(&self.multiply(*e, u)));
            let right: SparseVec = one.iter().fold(SparseVec::new(), |acc, (e, _)| acc.add(&self.multiply(u, *e)));
            if left != unit || right != unit {
                return Err(Error::Presentation(format!("unit fails on basis element {u}")));
            }
        }
        Ok(())
    }
}
