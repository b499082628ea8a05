//! Dense matrices over a [`Field`] with exact row reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Side-by-side concatenation.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form. Pivots are chosen left to right.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if !rv.is_zero() {
                        let v = m.get(i, j) - &(&f * rv);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, rank: pivots.len(), pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -reduced.get(row, free);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]))?;
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n)).ok()?;
        let r = aug.rref();
        if r.pivots.iter().copied().take(n).ne(0..n) || r.pivots.len() < n {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.reduced.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of_vectors(field: Field, len: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(field, len, vectors.to_vec()).map(|m| m.rank()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 2).rref();
        assert_eq!((id.rank, id.pivots), (2, vec![0, 1]));
        assert_eq!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
        // det = 1, nonzero mod 3
        assert_eq!(Matrix::from_i64(Field::Prime(3), &[&[2, 1], &[1, 1]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Q, 3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(Q, 3, 3).kernel_basis().len(), 3);
        let m = Matrix::from_i64(Q, &[&[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_examples() {
        let b: Vector = vec![Q.from_i64(3), Q.from_i64(-5)];
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap().unwrap(), b);
        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        assert!(m.solve(&[Q.from_i64(1), Q.from_i64(3)]).unwrap().is_none());
        let rhs = [Q.from_i64(1), Q.from_i64(2)];
        let x = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), rhs.to_vec());
        assert!(m.solve(&[Q.from_i64(1)]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Q, 2));
        assert!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
