use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::category::LinearCategory;
use crate::error::{Error, Result};
use crate::exact::{Echelon, Field, Scalar, SparseSolver, SparseVec};

/// A composable tuple `a_1 ∈ 𝔞(x_1,x_0), …, a_n ∈ 𝔞(x_n,x_{n−1})` over a
/// strictly increasing chain of objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub objs: Vec<i64>,
    pub args: Vec<usize>,
}

impl Cell {
    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn top(&self) -> i64 {
        *self.objs.last().unwrap()
    }

    pub fn bottom(&self) -> i64 {
        self.objs[0]
    }
}

fn chains(lo: i64, hi: i64, len: usize) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in chains(first + 1, hi, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    dims.iter().fold(vec![Vec::new()], |acc, &d| {
        acc.into_iter().flat_map(|t| (0..d).map(move |i| [t.clone(), vec![i]].concat())).collect()
    })
}

fn cells_of(cat: &LinearCategory, arity: usize) -> Vec<Cell> {
    let mut out = Vec::new();
    for objs in chains(cat.lo, cat.hi, arity + 1) {
        let dims: Vec<usize> = objs.windows(2).map(|w| cat.dim(w[1], w[0])).collect();
        for args in tuples(&dims) {
            out.push(Cell { objs: objs.clone(), args });
        }
    }
    out
}

/// The normalized Hochschild complex of a connected, positively graded
/// category. Non-identity arguments force strict chains, so a cochain of
/// arity `n` assigns each cell a value in `𝔞(x_n, x_0)`.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub cat: LinearCategory,
    pub max_arity: usize,
    cells: Vec<Vec<Cell>>,
    offsets: Vec<HashMap<Cell, usize>>,
    dims: Vec<usize>,
    /// `δ^n` as one column per coordinate of `C^n`, for `n < max_arity`.
    columns: Vec<Vec<SparseVec>>,
    solvers: Vec<SparseSolver>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HochschildDims {
    pub cochains: Vec<usize>,
    pub ranks: Vec<usize>,
    /// `H^0 … H^{max−1}`; the top degree would need `δ^{max}`.
    pub cohomology: Vec<usize>,
}

pub fn check_connected(cat: &LinearCategory) -> Result<()> {
    if cat.deformed {
        return Err(Error::Precondition("Hochschild cochains are computed on the undeformed base".into()));
    }
    if let Some(n) = cat.objects().find(|&n| cat.dim(n, n) != 1) {
        return Err(Error::Precondition(format!("𝔞({n},{n}) is not one-dimensional")));
    }
    Ok(())
}

impl HochschildComplex {
    /// Cochains up to arity `max_arity`, differentials `δ^0 … δ^{max−1}`.
    pub fn new(cat: &LinearCategory, max_arity: usize) -> Result<HochschildComplex> {
        check_connected(cat)?;
        let cells: Vec<Vec<Cell>> = (0..=max_arity).map(|n| cells_of(cat, n)).collect();
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        for cs in &cells {
            let mut map = HashMap::new();
            let mut off = 0;
            for c in cs {
                map.insert(c.clone(), off);
                off += cat.dim(c.top(), c.bottom());
            }
            offsets.push(map);
            dims.push(off);
        }
        let mut hc = HochschildComplex {
            cat: cat.clone(),
            max_arity,
            cells,
            offsets,
            dims,
            columns: Vec::new(),
            solvers: Vec::new(),
        };
        for n in 0..max_arity {
            let cols = hc.delta_columns(n);
            hc.solvers.push(SparseSolver::new(cat.field, &cols));
            hc.columns.push(cols);
        }
        Ok(hc)
    }

    pub fn field(&self) -> Field {
        self.cat.field
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn cells(&self, n: usize) -> &[Cell] {
        &self.cells[n]
    }

    pub fn offset(&self, c: &Cell) -> Option<usize> {
        self.offsets[c.arity()].get(c).copied()
    }

    /// Rows of `δ^n`, one per coordinate of `C^{n+1}`, transposed into columns.
    fn delta_columns(&self, n: usize) -> Vec<SparseVec> {
        let cat = &self.cat;
        let rows: Vec<Vec<(usize, usize, Scalar)>> = self.cells[n + 1]
            .par_iter()
            .map(|c| {
                let mut entries = Vec::new();
                let row0 = self.offset(c).unwrap();
                let x = &c.objs;
                let top = x[n + 1];
                let width = cat.dim(top, x[0]);
                if width == 0 {
                    return entries;
                }
                let mut push = |w: usize, col: usize, v: Scalar| entries.push((row0 + w, col, v));
                // a_1 · f(a_2, …)
                let tail = Cell { objs: x[1..].to_vec(), args: c.args[1..].to_vec() };
                let off = self.offset(&tail).unwrap();
                for v in 0..cat.dim(top, x[1]) {
                    for (w, s) in cat.mul_basis(top, x[1], x[0], c.args[0], v).iter() {
                        push(*w, off + v, s.clone());
                    }
                }
                // (−1)^i f(…, a_i a_{i+1}, …)
                for i in 1..=n {
                    let prod = cat.mul_basis(x[i + 1], x[i], x[i - 1], c.args[i - 1], c.args[i]);
                    let mut objs = x.clone();
                    objs.remove(i);
                    for (k, s) in prod.iter() {
                        let mut args = c.args.clone();
                        args.remove(i);
                        args[i - 1] = *k;
                        let off = self.offset(&Cell { objs: objs.clone(), args }).unwrap();
                        let s = if i % 2 == 1 { -s } else { s.clone() };
                        for w in 0..width {
                            push(w, off + w, s.clone());
                        }
                    }
                }
                // (−1)^{n+1} f(a_1, …, a_n) · a_{n+1}
                let head = Cell { objs: x[..=n].to_vec(), args: c.args[..n].to_vec() };
                let off = self.offset(&head).unwrap();
                let odd = (n + 1) % 2 == 1;
                for v in 0..cat.dim(x[n], x[0]) {
                    for (w, s) in cat.mul_basis(top, x[n], x[0], v, c.args[n]).iter() {
                        push(*w, off + v, if odd { -s } else { s.clone() });
                    }
                }
                entries
            })
            .collect();
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.dims[n]];
        for (r, c, v) in rows.into_iter().flatten() {
            cols[c].push((r, v));
        }
        cols.into_iter().map(SparseVec::from_pairs).collect()
    }

    /// `δ^n f` for `f ∈ C^n`.
    pub fn apply(&self, n: usize, f: &SparseVec) -> SparseVec {
        f.iter().fold(SparseVec::new(), |acc, (i, v)| acc.axpy(v, &self.columns[n][*i]))
    }

    pub fn rank(&self, n: usize) -> usize {
        self.solvers[n].rank()
    }

    pub fn cocycles(&self, n: usize) -> &[SparseVec] {
        self.solvers[n].kernel()
    }

    /// Some `γ` with `δ^n γ = b`.
    pub fn solve(&self, n: usize, b: &SparseVec) -> Option<SparseVec> {
        self.solvers[n].solve(b)
    }

    pub fn dims(&self) -> HochschildDims {
        let ranks: Vec<usize> = (0..self.max_arity).map(|n| self.rank(n)).collect();
        let cohomology = (0..self.max_arity)
            .map(|n| self.dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
            .collect();
        HochschildDims { cochains: self.dims.clone(), ranks, cohomology }
    }

    /// Cocycles in `C^n` whose classes form a basis of `H^n`.
    pub fn representatives(&self, n: usize) -> Vec<SparseVec> {
        let mut ech = Echelon::new(self.field());
        if n > 0 {
            for c in &self.columns[n - 1] {
                ech.insert(c);
            }
        }
        self.cocycles(n).iter().filter(|z| ech.insert(z)).cloned().collect()
    }
}

impl HochschildComplex {
    /// How many of the cocycles `vs` are independent modulo coboundaries.
    pub fn class_rank(&self, n: usize, vs: &[SparseVec]) -> usize {
        let mut ech = Echelon::new(self.field());
        if n > 0 {
            for c in &self.columns[n - 1] {
                ech.insert(c);
            }
        }
        vs.iter().filter(|v| ech.insert(v)).count()
    }

    /// Coordinates of `f` on the cells of `other` (a full subcategory).
    pub fn restrict_to(&self, other: &HochschildComplex, n: usize, f: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for c in other.cells(n) {
            let (Some(src), Some(dst)) = (self.offset(c), other.offset(c)) else { continue };
            let width = other.cat.dim(c.top(), c.bottom());
            for w in 0..width {
                if let Some(v) = f.get(src + w) {
                    pairs.push((dst + w, v.clone()));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }
}

/// `H^0 … H^{max_degree}` of a connected category.
pub fn hochschild_dims(cat: &LinearCategory, max_degree: usize) -> Result<Vec<usize>> {
    Ok(HochschildComplex::new(cat, max_degree + 1)?.dims().cohomology)
}

/// The interior of a window: one maximal generator degree away from each edge.
pub fn default_interior(cat: &LinearCategory) -> (i64, i64) {
    let margin = cat.gens.iter().map(|g| g.degree).max().unwrap_or(1);
    (cat.lo + margin, cat.hi - margin)
}

/// Cohomology of the full subcategory on `interior`, which must sit inside
/// the window away from its edges and be long enough for `max_degree`.
pub fn interior_hochschild(cat: &LinearCategory, interior: (i64, i64), max_degree: usize) -> Result<Vec<usize>> {
    let (a, b) = interior;
    let (dlo, dhi) = default_interior(cat);
    if a < dlo || b > dhi || a > b {
        return Err(Error::Precondition(format!("interior [{a},{b}] must lie inside [{dlo},{dhi}]")));
    }
    if ((b - a + 1) as usize) < max_degree + 1 {
        return Err(Error::Precondition(format!("interior [{a},{b}] is too small for degree {max_degree}")));
    }
    hochschild_dims(&cat.restrict(a, b)?, max_degree)
}
