use std::collections::BTreeMap;

use serde::Serialize;

use super::{ChainMap, Complex, ThreadAlgebra};
use crate::exact::{Echelon, Matrix, SparseVec, Vector};

/// Cohomology dimensions of `RHom(C, D)` per degree; zeros are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RHomTable {
    pub dims: BTreeMap<i64, usize>,
}

impl RHomTable {
    pub fn get(&self, p: i64) -> usize {
        self.dims.get(&p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn euler(&self) -> i64 {
        self.dims.iter().map(|(p, d)| if p % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum()
    }

    /// Nonzero at most in degree `p`.
    pub fn concentrated_in(&self, p: i64) -> bool {
        self.dims.keys().all(|&q| q == p)
    }
}

#[derive(Clone, Debug)]
struct Slot {
    t: i64,
    u: usize,
    s: usize,
    offset: usize,
    dim: usize,
}

/// The total complex `Hom^p(C, D) = Π_t Hom(C^t, D^{t+p})`, `δf = d f − (−1)^p f d`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: Complex,
    pub target: Complex,
    slots: BTreeMap<i64, Vec<Slot>>,
    pub dims: BTreeMap<i64, usize>,
    /// `δ^p : Hom^p → Hom^{p+1}`.
    pub diffs: BTreeMap<i64, Matrix>,
}

pub fn hom_complex(thr: &ThreadAlgebra, c: &Complex, d: &Complex) -> HomComplex {
    let (cd, dd) = (c.degrees(), d.degrees());
    let mut hc = HomComplex {
        source: c.clone(),
        target: d.clone(),
        slots: BTreeMap::new(),
        dims: BTreeMap::new(),
        diffs: BTreeMap::new(),
    };
    if cd.is_empty() || dd.is_empty() {
        return hc;
    }
    let (plo, phi) = (dd[0] - cd[cd.len() - 1], dd[dd.len() - 1] - cd[0]);
    for p in plo - 1..=phi + 1 {
        let mut slots = Vec::new();
        let mut offset = 0;
        for &t in &cd {
            for (s, &a) in c.term(t).iter().enumerate() {
                for (u, &b) in d.term(t + p).iter().enumerate() {
                    let dim = thr.cat.dim(a, b);
                    if dim > 0 {
                        slots.push(Slot { t, u, s, offset, dim });
                        offset += dim;
                    }
                }
            }
        }
        hc.dims.insert(p, offset);
        hc.slots.insert(p, slots);
    }
    let field = thr.field();
    for p in plo - 1..=phi {
        let cols: Vec<Vector> = (0..hc.dims[&p])
            .map(|j| {
                let mut v = vec![field.zero(); hc.dims[&p]];
                v[j] = field.one();
                let f = hc.to_map(p, &v);
                hc.from_map(&f.boundary(thr, c, d))
            })
            .collect();
        hc.diffs.insert(p, Matrix::from_columns(field, hc.dims[&(p + 1)], &cols));
    }
    hc
}

impl HomComplex {
    pub fn dim(&self, p: i64) -> usize {
        self.dims.get(&p).copied().unwrap_or(0)
    }

    fn rank(&self, p: i64) -> usize {
        self.diffs.get(&p).map(|m| m.rank()).unwrap_or(0)
    }

    pub fn table(&self) -> RHomTable {
        let dims = self
            .dims
            .keys()
            .map(|&p| (p, self.dim(p) - self.rank(p) - self.rank(p - 1)))
            .filter(|(_, h)| *h > 0)
            .collect();
        RHomTable { dims }
    }

    pub fn to_map(&self, p: i64, v: &[crate::exact::Scalar]) -> ChainMap {
        let mut f = ChainMap::zero(p);
        for sl in self.slots.get(&p).into_iter().flatten() {
            let e = SparseVec::from_dense(&v[sl.offset..sl.offset + sl.dim]);
            if e.is_zero() {
                continue;
            }
            let b = f.blocks.entry(sl.t).or_insert_with(|| {
                vec![vec![SparseVec::new(); self.source.term(sl.t).len()]; self.target.term(sl.t + p).len()]
            });
            b[sl.u][sl.s] = e;
        }
        f
    }

    pub fn from_map(&self, f: &ChainMap) -> Vector {
        let p = f.degree;
        let field = self.field_hint();
        let mut v = vec![field.zero(); self.dim(p)];
        for sl in self.slots.get(&p).into_iter().flatten() {
            if let Some(b) = f.blocks.get(&sl.t) {
                for (i, x) in b[sl.u][sl.s].iter() {
                    v[sl.offset + i] = x.clone();
                }
            }
        }
        v
    }

    fn field_hint(&self) -> crate::exact::Field {
        self.diffs.values().next().map(|m| m.field()).unwrap_or(crate::exact::Field::Rationals)
    }

    /// All cocycles of degree `p`.
    pub fn cocycles(&self, p: i64) -> Vec<Vector> {
        match self.diffs.get(&p) {
            Some(m) => m.kernel_basis(),
            None => Vec::new(),
        }
    }

    /// Cocycles whose classes form a basis of `H^p`.
    pub fn representatives(&self, p: i64) -> Vec<ChainMap> {
        let field = self.field_hint();
        let mut ech = Echelon::new(field);
        if let Some(m) = self.diffs.get(&(p - 1)) {
            for j in 0..m.cols() {
                ech.insert(&SparseVec::from_dense(&m.column(j)));
            }
        }
        self.cocycles(p)
            .into_iter()
            .filter(|z| ech.insert(&SparseVec::from_dense(z)))
            .map(|z| self.to_map(p, &z))
            .collect()
    }
}

impl HomComplex {
    /// `ε·f`, post-composing every entry with `ε`.
    pub fn eps_apply(&self, thr: &ThreadAlgebra, p: i64, v: &[crate::exact::Scalar]) -> Vector {
        let mut f = self.to_map(p, v);
        for (t, b) in f.blocks.iter_mut() {
            let (src, dst) = (self.source.term(*t), self.target.term(t + p));
            for (u, row) in b.iter_mut().enumerate() {
                for (s, e) in row.iter_mut().enumerate() {
                    *e = thr.cat.eps_vec(src[s], dst[u], e);
                }
            }
        }
        self.from_map(&f)
    }

    /// Representatives of a basis of `H^p` over the ground ring. Over the
    /// dual numbers these lift a basis of `H^p / ε·H^p`.
    pub fn ring_representatives(&self, thr: &ThreadAlgebra, p: i64) -> Vec<ChainMap> {
        if !thr.cat.deformed {
            return self.representatives(p);
        }
        let field = self.field_hint();
        let mut ech = Echelon::new(field);
        if let Some(m) = self.diffs.get(&(p - 1)) {
            for j in 0..m.cols() {
                ech.insert(&SparseVec::from_dense(&m.column(j)));
            }
        }
        let z = self.cocycles(p);
        for v in &z {
            ech.insert(&SparseVec::from_dense(&self.eps_apply(thr, p, v)));
        }
        z.into_iter().filter(|v| ech.insert(&SparseVec::from_dense(v))).map(|v| self.to_map(p, &v)).collect()
    }
}

/// `RHom(e_j·A, C)` for every thread object `j`: the cohomology of `C` at `j`.
pub fn cohomology_profile(thr: &ThreadAlgebra, c: &Complex) -> BTreeMap<i64, RHomTable> {
    thr.objects().map(|j| (j, hom_complex(thr, &Complex::projective(j), c).table())).collect()
}
