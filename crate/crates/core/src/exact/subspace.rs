//! Subspaces of `k^d` with coordinates and quotient projections.

use crate::exact::field::{Field, Scalar};
use crate::exact::matrix::{Matrix, Vector};
use crate::exact::sparse::{Echelon, SparseVec};

/// Fully reduced basis of a subspace. Each row has a 1 at its pivot (its
/// largest nonzero index) and zeros at all other pivots, so coordinates can be
/// read off directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Subspace {
    pub fn new(field: Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        let mut ech = Echelon::new(field);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length");
            ech.insert(&SparseVec::from_dense(v));
        }
        Subspace::from_echelon(field, ambient, &ech)
    }

    /// Fully reduces the rows of an echelon form (pivots at the largest index).
    pub fn from_echelon(field: Field, ambient: usize, ech: &Echelon) -> Subspace {
        let pivots: Vec<usize> = ech.pivots().collect();
        let rows = pivots
            .iter()
            .map(|&c| {
                let unit = SparseVec::unit(c, field);
                let rest = ech.row(c).sub(&unit);
                ech.reduce(&rest).add(&unit).to_dense(ambient, field)
            })
            .collect();
        let free = (0..ambient).filter(|c| !ech.is_pivot(*c)).collect();
        Subspace { field, ambient, rows, pivots, free }
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace::new(field, ambient, &[])
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let id = Matrix::identity(field, ambient);
        Subspace::new(field, ambient, &(0..ambient).map(|i| id.row(i).to_vec()).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// `v − Σ v[p]·row_p`; zero iff `v` lies in the subspace.
    pub fn residual(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *wi -= &(&c * ri);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.residual(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates in the row basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates of the image in `k^d / self`, using the free columns.
    pub fn project(&self, v: &[Scalar]) -> Vector {
        let w = self.residual(v);
        self.free.iter().map(|&j| w[j].clone()).collect()
    }

    /// Lift of the `i`-th quotient basis vector.
    pub fn complement_vector(&self, i: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.ambient];
        v[self.free[i]] = self.field.one();
        v
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Subspace::new(self.field, self.ambient, &all)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // kernel of [A^T | -B^T] paired back into the ambient space
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        let (a, b) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(self.field, self.ambient, a + b);
        for (j, r) in self.rows.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, j, r[i].clone());
            }
        }
        for (j, r) in other.rows.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, a + j, -&r[i]);
            }
        }
        let vecs: Vec<Vector> = m
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let mut v = vec![self.field.zero(); self.ambient];
                for (j, r) in self.rows.iter().enumerate() {
                    for i in 0..self.ambient {
                        v[i] += &(&k[j] * &r[i]);
                    }
                }
                v
            })
            .collect();
        Subspace::new(self.field, self.ambient, &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_and_quotient() {
        let f = Field::Rationals;
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_i64(x)).collect::<Vector>();
        let s = Subspace::new(f, 3, &[v(&[1, 1, 0]), v(&[2, 2, 0])]);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&v(&[3, 3, 0])));
        assert!(!s.contains(&v(&[1, 0, 0])));
        assert_eq!(s.project(&v(&[1, 1, 0])), v(&[0, 0]));
        let t = Subspace::new(f, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert_eq!(s.intersect(&t).dim(), 1);
        assert_eq!(s.sum(&t).dim(), 2);
    }
}
