//! Finite linear categories on a consecutive range of integer objects.
//!
//! Pieces are indexed `(n, m)` with `n ≥ m` and hold a basis of `𝔞(n,m)`.
//! The product of `x ∈ 𝔞(j,m)` and `y ∈ 𝔞(n,j)` is written `x·y ∈ 𝔞(n,m)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar, SparseVec};

/// A generator placed at a concrete object: an element of `𝔞(base+degree, base)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenInstance {
    pub label: String,
    pub scheme: usize,
    pub base: i64,
    pub degree: i64,
}

impl GenInstance {
    pub fn top(&self) -> i64 {
        self.base + self.degree
    }
}

/// A normal word `g1·g2·…·gk`, leftmost letter at the bottom object,
/// possibly multiplied by ε.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub word: Vec<usize>,
    pub eps: bool,
}

/// How a basis element factors: used to act on modules letter by letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decomp {
    Identity,
    Eps,
    /// `g · tail` with `tail` a basis index of `𝔞(top, base(g)+deg(g))`.
    Prod { gen: usize, tail: usize },
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub top: i64,
    pub bottom: i64,
    pub labels: Vec<BasisLabel>,
    pub decomp: Vec<Decomp>,
    /// Matrix of ε on this piece, one image per basis element.
    pub eps: Option<Vec<SparseVec>>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Debug)]
pub struct LinearCategory {
    pub field: Field,
    pub lo: i64,
    pub hi: i64,
    pub gens: Vec<GenInstance>,
    /// Each generator instance expressed in the basis of its piece.
    pub gen_vecs: Vec<SparseVec>,
    pub pieces: BTreeMap<(i64, i64), Piece>,
    /// `(n, j, m)` ↦ products, flattened as `x * dim(n,j) + y`.
    pub mul: HashMap<(i64, i64, i64), Vec<SparseVec>>,
    pub deformed: bool,
}

impl LinearCategory {
    pub fn objects(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi
    }

    pub fn check_object(&self, n: i64) -> Result<()> {
        if self.contains(n) {
            Ok(())
        } else {
            Err(Error::ObjectOutOfRange(n))
        }
    }

    pub fn piece(&self, n: i64, m: i64) -> Option<&Piece> {
        self.pieces.get(&(n, m))
    }

    pub fn dim(&self, n: i64, m: i64) -> usize {
        self.piece(n, m).map_or(0, Piece::dim)
    }

    /// Basis index of `1_m`.
    pub fn identity(&self, m: i64) -> usize {
        let p = &self.pieces[&(m, m)];
        p.labels.iter().position(|l| l.word.is_empty() && !l.eps).expect("identity")
    }

    pub fn identity_vec(&self, m: i64) -> SparseVec {
        SparseVec::unit(self.identity(m), self.field)
    }

    /// Product of basis elements `x ∈ 𝔞(j,m)` and `y ∈ 𝔞(n,j)`.
    pub fn mul_basis(&self, n: i64, j: i64, m: i64, x: usize, y: usize) -> &SparseVec {
        let d = self.dim(n, j);
        &self.mul[&(n, j, m)][x * d + y]
    }

    pub fn mul_vec(&self, n: i64, j: i64, m: i64, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let table = match self.mul.get(&(n, j, m)) {
            Some(t) => t,
            None => return SparseVec::new(),
        };
        let d = self.dim(n, j);
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (k, b) in y.iter() {
                let ab = a * b;
                for (t, c) in table[i * d + k].iter() {
                    pairs.push((*t, &ab * c));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// ε applied to a vector of `𝔞(n,m)`; zero for undeformed categories.
    pub fn eps_vec(&self, n: i64, m: i64, v: &SparseVec) -> SparseVec {
        let Some(eps) = self.piece(n, m).and_then(|p| p.eps.as_ref()) else {
            return SparseVec::new();
        };
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out = out.axpy(c, &eps[*i]);
        }
        out
    }

    pub fn eps_matrix(&self, n: i64, m: i64) -> Option<Matrix> {
        let p = self.piece(n, m)?;
        let eps = p.eps.as_ref()?;
        let cols: Vec<_> = eps.iter().map(|v| v.to_dense(p.dim(), self.field)).collect();
        Some(Matrix::from_columns(self.field, p.dim(), &cols))
    }

    /// Generator instances based at `m`.
    pub fn gens_at(&self, m: i64) -> impl Iterator<Item = (usize, &GenInstance)> {
        self.gens.iter().enumerate().filter(move |(_, g)| g.base == m)
    }

    /// Human-readable name of a basis element, with runs written as powers.
    pub fn label(&self, n: i64, m: i64, idx: usize) -> String {
        let l = &self.pieces[&(n, m)].labels[idx];
        let mut s = String::new();
        let mut i = 0;
        while i < l.word.len() {
            let name = &self.gens[l.word[i]].label;
            let mut j = i + 1;
            while j < l.word.len() && self.gens[l.word[j]].label == *name {
                j += 1;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if j - i > 1 {
                let _ = write!(s, "^{}", j - i);
            }
            i = j;
        }
        if s.is_empty() {
            s = format!("1_{m}");
        }
        if l.eps {
            s = format!("e*{s}");
        }
        s
    }

    /// Full subcategory on the objects `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<LinearCategory> {
        self.check_object(lo)?;
        self.check_object(hi)?;
        if lo > hi {
            return Err(Error::Precondition(format!("empty range [{lo},{hi}]")));
        }
        let inside = |n: i64| n >= lo && n <= hi;
        // generator instances are renumbered; words are remapped accordingly
        let mut remap = HashMap::new();
        let mut gens = Vec::new();
        let mut gen_vecs = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            if inside(g.base) && inside(g.top()) {
                remap.insert(i, gens.len());
                gens.push(g.clone());
                gen_vecs.push(self.gen_vecs[i].clone());
            }
        }
        let pieces = self
            .pieces
            .iter()
            .filter(|((n, m), _)| inside(*n) && inside(*m))
            .map(|(k, p)| {
                let mut p = p.clone();
                for l in &mut p.labels {
                    l.word = l.word.iter().map(|g| remap[g]).collect();
                }
                for d in &mut p.decomp {
                    if let Decomp::Prod { gen, .. } = d {
                        *gen = remap[gen];
                    }
                }
                (*k, p)
            })
            .collect();
        let mul = self
            .mul
            .iter()
            .filter(|((n, j, m), _)| inside(*n) && inside(*j) && inside(*m))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Ok(LinearCategory { field: self.field, lo, hi, gens, gen_vecs, pieces, mul, deformed: self.deformed })
    }

    /// Checks `(xy)z = x(yz)` on all basis triples. Returns the first failure.
    pub fn associativity_violation(&self) -> Option<(i64, i64, i64, i64)> {
        for m in self.objects() {
            for j in m..=self.hi {
                for k in j..=self.hi {
                    for n in k..=self.hi {
                        let (dx, dy, dz) = (self.dim(j, m), self.dim(k, j), self.dim(n, k));
                        for x in 0..dx {
                            for y in 0..dy {
                                let xy = self.mul_basis(k, j, m, x, y);
                                for z in 0..dz {
                                    let zv = SparseVec::unit(z, self.field);
                                    let l = self.mul_vec(n, k, m, xy, &zv);
                                    let yz = self.mul_basis(n, k, j, y, z);
                                    let r = self.mul_vec(n, j, m, &SparseVec::unit(x, self.field), yz);
                                    if l != r {
                                        return Some((n, k, j, m));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Coordinates of a scalar multiple of the identity.
    pub fn scalar_at(&self, m: i64, c: Scalar) -> SparseVec {
        SparseVec::from_pairs([(self.identity(m), c)])
    }
}
