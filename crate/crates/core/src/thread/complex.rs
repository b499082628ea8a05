use std::collections::BTreeMap;

use super::ThreadAlgebra;
use crate::category::Decomp;
use crate::error::{Error, Result};
use crate::exact::{Scalar, SparseVec};

/// Block matrix `[target][source]` of entries `𝔞(obj source, obj target)`.
pub type Blocks = Vec<Vec<SparseVec>>;

/// A bounded complex of projectives `e_j·A = 𝔞(−, j)`. Each term is a list
/// of summand objects; `d^p` goes from degree `p` to `p+1`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Complex {
    pub terms: BTreeMap<i64, Vec<i64>>,
    pub diffs: BTreeMap<i64, Blocks>,
}

/// A graded map `C → D` of degree `degree`; `blocks[t]` sends `C^t` to `D^{t+degree}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChainMap {
    pub degree: i64,
    pub blocks: BTreeMap<i64, Blocks>,
}

fn zero_blocks(rows: usize, cols: usize) -> Blocks {
    vec![vec![SparseVec::new(); cols]; rows]
}

impl Complex {
    pub fn zero() -> Complex {
        Complex::default()
    }

    /// `e_j·A` in degree 0.
    pub fn projective(j: i64) -> Complex {
        let mut c = Complex::zero();
        c.terms.insert(0, vec![j]);
        c
    }

    pub fn term(&self, p: i64) -> &[i64] {
        self.terms.get(&p).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// `d^p` as a block matrix, zero-filled when absent.
    pub fn diff(&self, p: i64) -> Blocks {
        match self.diffs.get(&p) {
            Some(d) => d.clone(),
            None => zero_blocks(self.term(p + 1).len(), self.term(p).len()),
        }
    }

    pub fn entry(&self, p: i64, target: usize, source: usize) -> SparseVec {
        self.diffs.get(&p).map(|d| d[target][source].clone()).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|t| t.is_empty())
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.iter().filter(|(_, t)| !t.is_empty()).map(|(p, _)| *p).collect()
    }

    pub fn rank(&self) -> usize {
        self.terms.values().map(|t| t.len()).sum()
    }

    /// Multiplicity vectors per degree, indexed by thread object.
    pub fn multiplicities(&self, thr: &ThreadAlgebra) -> BTreeMap<i64, Vec<usize>> {
        self.terms
            .iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(p, t)| (*p, thr.objects().map(|j| t.iter().filter(|&&o| o == j).count()).collect()))
            .collect()
    }

    /// Drops empty terms and the differentials touching them.
    pub fn normalize(mut self) -> Complex {
        self.terms.retain(|_, t| !t.is_empty());
        let terms = &self.terms;
        self.diffs.retain(|p, d| terms.contains_key(p) && terms.contains_key(&(p + 1)) && d.iter().flatten().any(|e| !e.is_zero()));
        self
    }

    /// Entries live in the right pieces and `d∘d = 0`.
    pub fn check(&self, thr: &ThreadAlgebra) -> Result<()> {
        let cat = &thr.cat;
        for (p, d) in &self.diffs {
            let (src, dst) = (self.term(*p), self.term(p + 1));
            if d.len() != dst.len() || d.iter().any(|r| r.len() != src.len()) {
                return Err(Error::InvalidComplex(format!("differential {p} has the wrong shape")));
            }
            for (u, row) in d.iter().enumerate() {
                for (s, e) in row.iter().enumerate() {
                    let dim = cat.dim(src[s], dst[u]);
                    if e.iter().any(|(i, _)| *i >= dim) {
                        return Err(Error::InvalidComplex(format!(
                            "entry ({u},{s}) of d^{p} is not in 𝔞({},{})",
                            src[s], dst[u]
                        )));
                    }
                }
            }
        }
        for p in self.terms.keys() {
            let dd = compose_blocks(thr, &self.diff(p + 1), &self.diff(*p), self.term(*p), self.term(p + 1), self.term(p + 2));
            if dd.iter().flatten().any(|e| !e.is_zero()) {
                return Err(Error::InvalidComplex(format!("d∘d ≠ 0 at degree {p}")));
            }
        }
        Ok(())
    }

    /// `C[s]`: `C[s]^t = C^{t+s}` with differential `(−1)^s d`.
    pub fn shift(&self, s: i64) -> Complex {
        let sign = s.rem_euclid(2) == 1;
        Complex {
            terms: self.terms.iter().map(|(p, t)| (p - s, t.clone())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(p, d)| (p - s, if sign { negate(d) } else { d.clone() }))
                .collect(),
        }
    }

    /// Block-diagonal direct sum; summands of `self` come first.
    pub fn direct_sum(&self, other: &Complex) -> Complex {
        let mut out = Complex::zero();
        let degrees: std::collections::BTreeSet<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        for &p in &degrees {
            let mut t = self.term(p).to_vec();
            t.extend_from_slice(other.term(p));
            out.terms.insert(p, t);
        }
        for &p in &degrees {
            let (a, b) = (self.diff(p), other.diff(p));
            let (a_src, b_src) = (self.term(p).len(), other.term(p).len());
            let mut d = zero_blocks(a.len() + b.len(), a_src + b_src);
            for (u, row) in a.iter().enumerate() {
                for (s, e) in row.iter().enumerate() {
                    d[u][s] = e.clone();
                }
            }
            for (u, row) in b.iter().enumerate() {
                for (s, e) in row.iter().enumerate() {
                    d[a.len() + u][a_src + s] = e.clone();
                }
            }
            out.diffs.insert(p, d);
        }
        out.normalize()
    }

    /// `V ⊗_k E` for a graded vector space given as `(degree, dim)` pairs.
    pub fn tensor_k(v: &[(i64, usize)], e: &Complex) -> Complex {
        let mut out = Complex::zero();
        for &(p, dim) in v {
            for _ in 0..dim {
                out = out.direct_sum(&e.shift(-p));
            }
        }
        out
    }

    /// `Hom_k(V, k) ⊗ E`: the dual of `V` sits in the negated degrees.
    pub fn cotensor_k(v: &[(i64, usize)], e: &Complex) -> Complex {
        let dual: Vec<(i64, usize)> = v.iter().map(|&(p, d)| (-p, d)).collect();
        Complex::tensor_k(&dual, e)
    }

    /// Splits off contractible summands `e_j·A --c·1--> e_j·A` until the
    /// differential is radical.
    pub fn minimize(&self, thr: &ThreadAlgebra) -> Complex {
        let mut c = self.clone().normalize();
        while let Some((p, y, x, inv)) = find_unit(thr, &c) {
            c = eliminate(thr, &c, p, y, x, &inv);
        }
        c.normalize()
    }
}

fn negate(d: &Blocks) -> Blocks {
    d.iter().map(|r| r.iter().map(|e| e.iter().map(|(i, v)| (*i, -v)).collect()).collect()).collect()
}

/// `(a∘b)[w][s] = Σ_u a[w][u]·b[u][s]`.
pub(crate) fn compose_blocks(thr: &ThreadAlgebra, a: &Blocks, b: &Blocks, src: &[i64], mid: &[i64], dst: &[i64]) -> Blocks {
    let mut out = zero_blocks(dst.len(), src.len());
    for (w, row) in out.iter_mut().enumerate() {
        for (s, e) in row.iter_mut().enumerate() {
            let mut acc = SparseVec::new();
            for u in 0..mid.len() {
                let (x, y) = (&a[w][u], &b[u][s]);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = acc.add(&thr.cat.mul_vec(src[s], mid[u], dst[w], x, y));
            }
            *e = acc;
        }
    }
    out
}

/// An entry `c·1` between equal objects, with `c⁻¹`.
fn find_unit(thr: &ThreadAlgebra, c: &Complex) -> Option<(i64, usize, usize, Scalar)> {
    for (p, d) in &c.diffs {
        let (src, dst) = (c.term(*p), c.term(p + 1));
        for (y, row) in d.iter().enumerate() {
            for (x, e) in row.iter().enumerate() {
                if src[x] != dst[y] || e.len() != 1 {
                    continue;
                }
                let (i, v) = &e.iter().next().unwrap();
                let piece = &thr.cat.pieces[&(src[x], src[x])];
                if piece.decomp[*i] == Decomp::Identity {
                    return Some((*p, y, x, v.inv().unwrap()));
                }
            }
        }
    }
    None
}

/// Gaussian elimination of the summands `x ∈ C^p`, `y ∈ C^{p+1}`.
fn eliminate(thr: &ThreadAlgebra, c: &Complex, p: i64, y: usize, x: usize, inv: &Scalar) -> Complex {
    let (src, dst) = (c.term(p).to_vec(), c.term(p + 1).to_vec());
    let d = c.diff(p);
    let mut out = c.clone();
    let mut nd = Vec::new();
    for (yy, row) in d.iter().enumerate() {
        if yy == y {
            continue;
        }
        let mut nrow = Vec::new();
        for (xx, e) in row.iter().enumerate() {
            if xx == x {
                continue;
            }
            let corr = thr.cat.mul_vec(src[xx], src[x], dst[yy], &d[yy][x], &d[y][xx]);
            nrow.push(e.axpy(&-inv.clone(), &corr));
        }
        nd.push(nrow);
    }
    out.diffs.insert(p, nd);
    if let Some(prev) = out.diffs.get_mut(&(p - 1)) {
        prev.remove(x);
    }
    if let Some(next) = out.diffs.get_mut(&(p + 1)) {
        for row in next.iter_mut() {
            row.remove(y);
        }
    }
    out.terms.get_mut(&p).unwrap().remove(x);
    out.terms.get_mut(&(p + 1)).unwrap().remove(y);
    out
}

impl ChainMap {
    pub fn zero(degree: i64) -> ChainMap {
        ChainMap { degree, blocks: BTreeMap::new() }
    }

    pub fn block(&self, t: i64, c: &Complex, d: &Complex) -> Blocks {
        match self.blocks.get(&t) {
            Some(b) => b.clone(),
            None => zero_blocks(d.term(t + self.degree).len(), c.term(t).len()),
        }
    }

    pub fn identity(thr: &ThreadAlgebra, c: &Complex) -> ChainMap {
        let mut f = ChainMap::zero(0);
        for (p, t) in &c.terms {
            let mut b = zero_blocks(t.len(), t.len());
            for (i, &j) in t.iter().enumerate() {
                b[i][i] = SparseVec::unit(thr.cat.identity(j), thr.field());
            }
            f.blocks.insert(*p, b);
        }
        f
    }

    /// `d_D∘f − (−1)^k f∘d_C`; zero exactly for chain maps of degree `k`.
    pub fn boundary(&self, thr: &ThreadAlgebra, c: &Complex, d: &Complex) -> ChainMap {
        let k = self.degree;
        let mut out = ChainMap::zero(k + 1);
        let degrees: Vec<i64> = c.terms.keys().flat_map(|&t| [t - 1, t]).collect();
        for t in degrees {
            let left = compose_blocks(thr, &d.diff(t + k), &self.block(t, c, d), c.term(t), d.term(t + k), d.term(t + k + 1));
            let right = compose_blocks(thr, &self.block(t + 1, c, d), &c.diff(t), c.term(t), c.term(t + 1), d.term(t + k + 1));
            let odd = k.rem_euclid(2) == 1;
            let b: Blocks = left
                .iter()
                .zip(&right)
                .map(|(l, r)| l.iter().zip(r).map(|(x, y)| if odd { x.add(y) } else { x.sub(y) }).collect())
                .collect();
            if b.iter().flatten().any(|e| !e.is_zero()) {
                out.blocks.insert(t, b);
            }
        }
        out
    }

    pub fn is_chain_map(&self, thr: &ThreadAlgebra, c: &Complex, d: &Complex) -> bool {
        self.boundary(thr, c, d).blocks.is_empty()
    }

    /// Standard cone `D ⊕ C[1]` of a degree-0 chain map.
    pub fn cone(&self, thr: &ThreadAlgebra, c: &Complex, d: &Complex) -> Result<Complex> {
        if self.degree != 0 || !self.is_chain_map(thr, c, d) {
            return Err(Error::InvalidMap("cone needs a degree-0 chain map".into()));
        }
        let shifted = c.shift(1);
        let mut out = d.direct_sum(&shifted);
        let degrees: Vec<i64> = out.terms.keys().copied().collect();
        for p in degrees {
            let dn = d.term(p + 1).len();
            let f = self.block(p + 1, c, d);
            if f.iter().flatten().all(|e| e.is_zero()) {
                continue;
            }
            let mut blocks = out.diff(p);
            let dp = d.term(p).len();
            for (u, row) in f.iter().enumerate().take(dn) {
                for (s, e) in row.iter().enumerate() {
                    blocks[u][dp + s] = e.clone();
                }
            }
            out.diffs.insert(p, blocks);
        }
        let out = out.normalize();
        out.check(thr)?;
        Ok(out)
    }
}
