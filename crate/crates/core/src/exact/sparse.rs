//! Sparse vectors and an incremental echelon form.
//!
//! Pivots sit at the largest nonzero index of each row, so reducing a vector
//! leaves a remainder supported on the smallest admissible indices.

use std::collections::BTreeMap;

use crate::exact::field::{Field, Scalar};
use crate::exact::matrix::Vector;

/// Sorted `(index, nonzero value)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, field: Field) -> SparseVec {
        SparseVec { entries: vec![(i, field.one())] }
    }

    /// Builds from arbitrary pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            match acc.get_mut(&i) {
                Some(s) => *s += &v,
                None => {
                    acc.insert(i, v);
                }
            }
        }
        SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(v: &[Scalar]) -> SparseVec {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vector {
        let mut v = vec![field.zero(); len];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&v.field().one(), other),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&-v.field().one(), other),
        }
    }

    /// Reindexes entries, e.g. to embed into a larger space.
    pub fn shift(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    /// Keeps entries with index in `range`, reindexed from its start.
    pub fn slice(&self, range: std::ops::Range<usize>) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| range.contains(i))
                .map(|(i, v)| (i - range.start, v.clone()))
                .collect(),
        }
    }

    pub fn dot(&self, dense: &[Scalar]) -> Option<Scalar> {
        let mut it = self.entries.iter();
        let (i0, v0) = it.next()?;
        let mut acc = v0 * &dense[*i0];
        for (i, v) in it {
            acc += &(v * &dense[*i]);
        }
        Some(acc)
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        SparseVec::from_pairs(iter)
    }
}

/// Rows in echelon form keyed by pivot (largest nonzero index, value 1).
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon { field, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// The stored row with pivot `c`.
    pub fn row(&self, c: usize) -> &SparseVec {
        &self.rows[&c]
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    /// Eliminates pivot entries from the top down until the leading entry is
    /// not a pivot. Returns the partially reduced vector.
    fn reduce_leading(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        while let Some((c, val)) = acc.pop_last() {
            if val.is_zero() {
                continue;
            }
            match self.rows.get(&c) {
                Some(row) => subtract(&mut acc, &val, row, c),
                None => {
                    acc.insert(c, val);
                    break;
                }
            }
        }
        SparseVec::from_pairs(acc)
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce_leading(v);
        let Some(c) = r.leading() else {
            return false;
        };
        let inv = r.get(c).unwrap().inv().unwrap();
        self.rows.insert(c, r.scale(&inv));
        true
    }

    /// Full reduction: the remainder has no pivot indices in its support.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((c, val)) = acc.pop_last() {
            if val.is_zero() {
                continue;
            }
            match self.rows.get(&c) {
                Some(row) => subtract(&mut acc, &val, row, c),
                None => out.push((c, val)),
            }
        }
        out.reverse();
        SparseVec { entries: out }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_leading(v).is_zero()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

fn subtract(acc: &mut BTreeMap<usize, Scalar>, val: &Scalar, row: &SparseVec, pivot: usize) {
    for (i, r) in row.iter() {
        if *i == pivot {
            continue;
        }
        let t = val * r;
        match acc.get_mut(i) {
            Some(s) => *s -= &t,
            None => {
                acc.insert(*i, -t);
            }
        }
    }
}

/// Solves `D γ = b` for a matrix given by its columns, tracking combinations.
///
/// Each column `D e_j` is stored as `[e_j | D e_j]` with the image shifted
/// above the tags, so pivots always land in the image part.
#[derive(Clone, Debug)]
pub struct SparseSolver {
    ncols: usize,
    echelon: Echelon,
    kernel: Vec<SparseVec>,
}

impl SparseSolver {
    pub fn new(field: Field, columns: &[SparseVec]) -> SparseSolver {
        let ncols = columns.len();
        let mut echelon = Echelon::new(field);
        let mut kernel = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            let aug = SparseVec::unit(j, field).add(&col.shift(ncols));
            let r = echelon.reduce_leading(&aug);
            match r.leading() {
                Some(c) if c >= ncols => {
                    let inv = r.get(c).unwrap().inv().unwrap();
                    echelon.rows.insert(c, r.scale(&inv));
                }
                Some(_) => kernel.push(r),
                None => unreachable!("tag part keeps the vector nonzero"),
            }
        }
        SparseSolver { ncols, echelon, kernel }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// A basis of the kernel of `D`.
    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let r = self.echelon.reduce(&b.shift(self.ncols));
        if r.leading().is_some_and(|c| c >= self.ncols) {
            return None;
        }
        Some(r.scale(&-self.echelon.field.one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    #[test]
    fn echelon_rank_and_reduce() {
        let f = Field::Rationals;
        let mut e = Echelon::new(f);
        assert!(e.insert(&SparseVec::from_pairs([(0, q(1)), (2, q(1))])));
        assert!(e.insert(&SparseVec::from_pairs([(1, q(1)), (2, q(2))])));
        assert!(!e.insert(&SparseVec::from_pairs([(0, q(2)), (1, q(-1))])));
        assert_eq!(e.rank(), 2);
        // x2 ≡ -x0 and then x1 ≡ 2·x0, so 3·x2 + x1 ≡ -x0
        let r = e.reduce(&SparseVec::from_pairs([(2, q(3)), (1, q(1))]));
        assert_eq!(r, SparseVec::from_pairs([(0, q(-1))]));
    }

    #[test]
    fn solver_recovers_preimage() {
        let f = Field::Rationals;
        let cols = vec![
            SparseVec::from_pairs([(0, q(1)), (1, q(1))]),
            SparseVec::from_pairs([(1, q(1))]),
            SparseVec::from_pairs([(0, q(2)), (1, q(3))]),
        ];
        let s = SparseSolver::new(f, &cols);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.kernel().len(), 1);
        let b = SparseVec::from_pairs([(0, q(5)), (1, q(-7))]);
        let g = s.solve(&b).unwrap();
        let mut img = SparseVec::new();
        for (j, c) in g.iter() {
            img = img.axpy(c, &cols[*j]);
        }
        assert_eq!(img, b);
        let k = &s.kernel()[0];
        let mut z = SparseVec::new();
        for (j, c) in k.iter() {
            z = z.axpy(c, &cols[*j]);
        }
        assert!(z.is_zero());
        let short = SparseSolver::new(f, &cols[..1]);
        assert!(short.solve(&SparseVec::from_pairs([(1, q(1))])).is_none());
    }
}
