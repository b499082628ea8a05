//! Right modules over a window category.
//!
//! A module has a component `M_n` for each object and, for every generator
//! instance `g ∈ 𝔞(t, b)`, a matrix `M_b → M_t` for `x ↦ x·g`. Vectors are
//! columns; the action of an arbitrary basis element is read off its word.

use serde::Serialize;

use crate::category::{Decomp, LinearCategory};
use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar, SparseVec, Subspace, Vector};
use crate::status::{Horizon, Status};
use crate::zalgebra::Element;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowModule {
    pub field: Field,
    pub lo: i64,
    pub hi: i64,
    pub dims: Vec<usize>,
    /// One matrix per generator instance of the category.
    pub actions: Vec<Matrix>,
    /// ε on each component, for modules over a deformed category.
    pub eps: Option<Vec<Matrix>>,
}

fn sparse_to_dense(v: &SparseVec, len: usize, field: Field) -> Vector {
    v.to_dense(len, field)
}

impl WindowModule {
    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    fn from_dims(cat: &LinearCategory, dims: Vec<usize>, mut action: impl FnMut(usize) -> Matrix) -> WindowModule {
        let actions = (0..cat.gens.len()).map(&mut action).collect();
        let eps = cat.deformed.then(|| {
            dims.iter().map(|&d| Matrix::zeros(cat.field, d, d)).collect()
        });
        WindowModule { field: cat.field, lo: cat.lo, hi: cat.hi, dims, actions, eps }
    }

    pub fn zero(cat: &LinearCategory) -> WindowModule {
        let dims = vec![0; (cat.hi - cat.lo + 1) as usize];
        WindowModule::from_dims(cat, dims, |_| Matrix::zeros(cat.field, 0, 0))
    }

    /// Components of the given dimensions with every action zero.
    pub fn semisimple(cat: &LinearCategory, dims: Vec<usize>) -> WindowModule {
        assert_eq!(dims.len(), (cat.hi - cat.lo + 1) as usize);
        let d = dims.clone();
        let (lo, f) = (cat.lo, cat.field);
        WindowModule::from_dims(cat, dims, |g| {
            let gi = &cat.gens[g];
            Matrix::zeros(f, d[(gi.top() - lo) as usize], d[(gi.base - lo) as usize])
        })
    }

    pub fn zero_vec(&self, n: i64) -> Vector {
        vec![self.field.zero(); self.dim(n)]
    }

    pub fn unit_vec(&self, n: i64, i: usize) -> Vector {
        let mut v = self.zero_vec(n);
        v[i] = self.field.one();
        v
    }

    pub fn act_gen(&self, g: usize, x: &[Scalar]) -> Vector {
        self.actions[g].mul_vec(x).expect("component size")
    }

    pub fn apply_eps(&self, n: i64, x: &[Scalar]) -> Vector {
        match &self.eps {
            Some(e) => e[(n - self.lo) as usize].mul_vec(x).expect("component size"),
            None => self.zero_vec(n),
        }
    }

    /// `x·a` for `x ∈ M_m` and the basis element `a` of `𝔞(n,m)`.
    pub fn act_basis(&self, cat: &LinearCategory, n: i64, m: i64, a: usize, x: &[Scalar]) -> Vector {
        match cat.pieces[&(n, m)].decomp[a] {
            Decomp::Identity => x.to_vec(),
            Decomp::Eps => self.apply_eps(m, x),
            Decomp::Prod { gen, tail } => {
                let y = self.act_gen(gen, x);
                self.act_basis(cat, n, cat.gens[gen].top(), tail, &y)
            }
        }
    }

    /// `x·a` for `x ∈ M_{a.bottom}`.
    pub fn act(&self, cat: &LinearCategory, x: &[Scalar], a: &Element) -> Vector {
        let mut out = self.zero_vec(a.top);
        for (i, c) in a.coords.iter() {
            let y = self.act_basis(cat, a.top, a.bottom, *i, x);
            for (o, v) in out.iter_mut().zip(&y) {
                *o += &(c * v);
            }
        }
        out
    }

    /// Matrix of `x ↦ x·a` for the basis element `a ∈ 𝔞(n,m)`.
    pub fn action_matrix(&self, cat: &LinearCategory, n: i64, m: i64, a: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim(m)).map(|i| self.act_basis(cat, n, m, a, &self.unit_vec(m, i))).collect();
        Matrix::from_columns(self.field, self.dim(n), &cols)
    }

    /// Checks `(x·a)·b = x·(ab)` on all basis data and that ε commutes.
    pub fn validate(&self, cat: &LinearCategory) -> Result<()> {
        for m in cat.objects() {
            for j in m..=cat.hi {
                for n in j..=cat.hi {
                    for i in 0..self.dim(m) {
                        let x = self.unit_vec(m, i);
                        for a in 0..cat.dim(j, m) {
                            let xa = self.act_basis(cat, j, m, a, &x);
                            for b in 0..cat.dim(n, j) {
                                let lhs = self.act_basis(cat, n, j, b, &xa);
                                let ab = Element { top: n, bottom: m, coords: cat.mul_basis(n, j, m, a, b).clone() };
                                if lhs != self.act(cat, &x, &ab) {
                                    return Err(Error::InvalidMap(format!("action not associative at ({n},{j},{m})")));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The representable module `𝔞(−,m)`.
pub fn representable(cat: &LinearCategory, m: i64) -> Result<WindowModule> {
    cat.check_object(m)?;
    let dims: Vec<usize> = cat.objects().map(|n| cat.dim(n, m)).collect();
    let f = cat.field;
    let mut module = WindowModule::from_dims(cat, dims, |g| {
        let gi = &cat.gens[g];
        let (b, t) = (gi.base, gi.top());
        let cols: Vec<Vector> = (0..cat.dim(b, m))
            .map(|x| {
                let v = cat.mul_vec(t, b, m, &SparseVec::unit(x, f), &cat.gen_vecs[g]);
                sparse_to_dense(&v, cat.dim(t, m), f)
            })
            .collect();
        Matrix::from_columns(f, cat.dim(t, m), &cols)
    });
    if cat.deformed {
        module.eps = Some(
            cat.objects()
                .map(|n| cat.eps_matrix(n, m).unwrap_or_else(|| Matrix::zeros(f, 0, 0)))
                .collect(),
        );
    }
    Ok(module)
}

pub fn direct_sum(a: &WindowModule, b: &WindowModule) -> WindowModule {
    let block = |x: &Matrix, y: &Matrix| {
        let mut m = Matrix::zeros(x.field(), x.rows() + y.rows(), x.cols() + y.cols());
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                m.set(i, j, x.get(i, j).clone());
            }
        }
        for i in 0..y.rows() {
            for j in 0..y.cols() {
                m.set(x.rows() + i, x.cols() + j, y.get(i, j).clone());
            }
        }
        m
    };
    WindowModule {
        field: a.field,
        lo: a.lo,
        hi: a.hi,
        dims: a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect(),
        actions: a.actions.iter().zip(&b.actions).map(|(x, y)| block(x, y)).collect(),
        eps: match (&a.eps, &b.eps) {
            (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(p, q)| block(p, q)).collect()),
            _ => None,
        },
    }
}

/// A subspace of every component, closed under the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub lo: i64,
    pub parts: Vec<Subspace>,
}

impl Submodule {
    pub fn part(&self, n: i64) -> &Subspace {
        &self.parts[(n - self.lo) as usize]
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n >= self.lo + self.parts.len() as i64 {
            0
        } else {
            self.part(n).dim()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    pub fn zero(m: &WindowModule) -> Submodule {
        Submodule { lo: m.lo, parts: m.dims.iter().map(|&d| Subspace::zero(m.field, d)).collect() }
    }

    pub fn full(m: &WindowModule) -> Submodule {
        Submodule { lo: m.lo, parts: m.dims.iter().map(|&d| Subspace::full(m.field, d)).collect() }
    }

    /// The smallest submodule containing the given elements.
    pub fn generated(cat: &LinearCategory, m: &WindowModule, elements: &[(i64, Vector)]) -> Submodule {
        let mut parts: Vec<Subspace> = Vec::with_capacity(m.dims.len());
        for n in cat.objects() {
            let mut vecs: Vec<Vector> = elements.iter().filter(|(k, _)| *k == n).map(|(_, v)| v.clone()).collect();
            for (g, gi) in cat.gens.iter().enumerate() {
                if gi.top() == n {
                    for v in parts[(gi.base - cat.lo) as usize].basis() {
                        vecs.push(m.act_gen(g, v));
                    }
                }
            }
            let s = Subspace::new(m.field, m.dim(n), &vecs);
            let mut with_eps = s.basis().to_vec();
            if m.eps.is_some() {
                with_eps.extend(s.basis().iter().map(|v| m.apply_eps(n, v)).collect::<Vec<_>>());
            }
            parts.push(Subspace::new(m.field, m.dim(n), &with_eps));
        }
        Submodule { lo: cat.lo, parts }
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a.contains_space(b))
    }

    pub fn is_closed(&self, cat: &LinearCategory, m: &WindowModule) -> bool {
        cat.gens.iter().enumerate().all(|(g, gi)| {
            self.part(gi.base).basis().iter().all(|v| self.part(gi.top()).contains(&m.act_gen(g, v)))
        }) && cat
            .objects()
            .all(|n| self.part(n).basis().iter().all(|v| self.part(n).contains(&m.apply_eps(n, v))))
    }

    /// The submodule as a module in its own row basis.
    pub fn as_module(&self, cat: &LinearCategory, m: &WindowModule) -> WindowModule {
        let f = m.field;
        let actions = cat
            .gens
            .iter()
            .enumerate()
            .map(|(g, gi)| {
                let (src, dst) = (self.part(gi.base), self.part(gi.top()));
                let cols: Vec<Vector> =
                    src.basis().iter().map(|v| dst.coords(&m.act_gen(g, v)).expect("closed")).collect();
                Matrix::from_columns(f, dst.dim(), &cols)
            })
            .collect();
        let eps = m.eps.as_ref().map(|_| {
            cat.objects()
                .map(|n| {
                    let p = self.part(n);
                    let cols: Vec<Vector> =
                        p.basis().iter().map(|v| p.coords(&m.apply_eps(n, v)).expect("closed")).collect();
                    Matrix::from_columns(f, p.dim(), &cols)
                })
                .collect()
        });
        WindowModule { field: f, lo: m.lo, hi: m.hi, dims: self.dims(), actions, eps }
    }

    /// `M / self`, with components spanned by the free columns.
    pub fn quotient(&self, cat: &LinearCategory, m: &WindowModule) -> WindowModule {
        let f = m.field;
        let qdim = |p: &Subspace| p.ambient() - p.dim();
        let actions = cat
            .gens
            .iter()
            .enumerate()
            .map(|(g, gi)| {
                let (src, dst) = (self.part(gi.base), self.part(gi.top()));
                let cols: Vec<Vector> = (0..qdim(src))
                    .map(|i| dst.project(&m.act_gen(g, &src.complement_vector(i))))
                    .collect();
                Matrix::from_columns(f, qdim(dst), &cols)
            })
            .collect();
        let eps = m.eps.as_ref().map(|_| {
            cat.objects()
                .map(|n| {
                    let p = self.part(n);
                    let cols: Vec<Vector> =
                        (0..qdim(p)).map(|i| p.project(&m.apply_eps(n, &p.complement_vector(i)))).collect();
                    Matrix::from_columns(f, qdim(p), &cols)
                })
                .collect()
        });
        let dims = self.parts.iter().map(qdim).collect();
        WindowModule { field: f, lo: m.lo, hi: m.hi, dims, actions, eps }
    }
}

/// `0 → M_{≥m} → M → M_{<m} → 0`. Cutoffs outside the window are clamped.
pub fn truncate(cat: &LinearCategory, module: &WindowModule, m: i64) -> (Submodule, WindowModule) {
    let parts = cat
        .objects()
        .map(|n| {
            let d = module.dim(n);
            if n >= m {
                Subspace::full(module.field, d)
            } else {
                Subspace::zero(module.field, d)
            }
        })
        .collect();
    let ge = Submodule { lo: cat.lo, parts };
    let lt = ge.quotient(cat, module);
    (ge, lt)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdealKind {
    /// All of `𝔞`.
    Whole,
    /// `𝔞_{≥n}`: components `𝔞(k,m)` with `k ≥ n`.
    Tail(i64),
    /// `𝔞₊`: components `𝔞(k,m)` with `k ≥ m+1`.
    Plus,
}

impl IdealKind {
    /// Lowest level of the ideal inside `𝔞(−,m)`.
    pub fn start(self, m: i64) -> i64 {
        match self {
            IdealKind::Whole => m,
            IdealKind::Tail(n) => n.max(m),
            IdealKind::Plus => m + 1,
        }
    }
}

/// For each object `m`, the ideal as a submodule of `𝔞(−,m)`.
pub fn ideal(cat: &LinearCategory, kind: IdealKind) -> Result<Vec<(i64, Submodule)>> {
    if let IdealKind::Tail(n) = kind {
        cat.check_object(n)?;
    }
    cat.objects()
        .map(|m| {
            let rep = representable(cat, m)?;
            Ok((m, truncate(cat, &rep, kind.start(m)).0))
        })
        .collect()
}

/// `X·I`, the span of all `x·a` with `x ∈ X` and `a` in the ideal.
pub fn submodule_product(cat: &LinearCategory, module: &WindowModule, xs: &[(i64, Vector)], kind: IdealKind) -> Submodule {
    let mut elements = Vec::new();
    for (m, x) in xs {
        for n in kind.start(*m)..=cat.hi {
            for a in 0..cat.dim(n, *m) {
                elements.push((n, module.act_basis(cat, n, *m, a, x)));
            }
        }
    }
    Submodule::generated(cat, module, &elements)
}

/// Zero through the horizon: pass. Anything else cannot be decided.
pub fn is_right_bounded(module: &WindowModule, h: Horizon) -> Status {
    if (h.start..=h.hi).all(|n| module.dim(n) == 0) {
        Status::Pass
    } else {
        Status::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionEntry {
    pub object: i64,
    pub index: usize,
    /// Least level from which `x·𝔞(n,m) = 0`, if reached inside the window.
    pub n0: Option<i64>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub status: Status,
    pub table: Vec<TorsionEntry>,
    /// First basis element that never dies in the window, or else the first
    /// one whose vanishing level lies inside the horizon.
    pub witness: Option<(i64, usize)>,
}

pub fn is_torsion(cat: &LinearCategory, module: &WindowModule, h: Horizon) -> TorsionReport {
    let mut table = Vec::new();
    for m in cat.objects() {
        for i in 0..module.dim(m) {
            let span = Submodule::generated(cat, module, &[(m, module.unit_vec(m, i))]);
            let top = cat.objects().filter(|&n| span.dim(n) > 0).max().unwrap_or(m);
            let n0 = (top < cat.hi).then_some(top + 1);
            let certified = n0.is_some_and(|n0| h.certifies(m, n0));
            table.push(TorsionEntry { object: m, index: i, n0, certified });
        }
    }
    let unbounded = table.iter().find(|e| e.n0.is_none());
    let uncertified = table.iter().find(|e| !e.certified);
    let (status, witness) = match (unbounded, uncertified) {
        (Some(e), _) => (Status::Fail, Some((e.object, e.index))),
        (None, Some(e)) => (Status::Inconclusive, Some((e.object, e.index))),
        (None, None) => (Status::Pass, None),
    };
    TorsionReport { status, table, witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleFgReport {
    pub status: Status,
    /// Chosen generators as `(object, basis index)`.
    pub generators: Vec<(i64, usize)>,
    pub reason: String,
}

/// Greedy minimal generators, lowest level first.
pub fn is_finitely_generated_module(cat: &LinearCategory, module: &WindowModule, h: Horizon) -> ModuleFgReport {
    // everything below is generated by then, so level n receives the images
    // of whole components
    let mut generators: Vec<(i64, usize)> = Vec::new();
    for n in cat.objects() {
        let mut vecs = Vec::new();
        for (g, gi) in cat.gens.iter().enumerate() {
            if gi.top() == n {
                let a = &module.actions[g];
                vecs.extend((0..a.cols()).map(|j| a.column(j)));
            }
        }
        if let Some(e) = &module.eps {
            let a = &e[(n - cat.lo) as usize];
            vecs.extend((0..a.cols()).map(|j| a.column(j)));
        }
        let part = Subspace::new(module.field, module.dim(n), &vecs);
        generators.extend(part.free_columns().iter().map(|&j| (n, j)));
    }
    let in_horizon: Vec<i64> = generators.iter().map(|(n, _)| *n).filter(|&n| h.contains(n)).collect();
    let every_level = (h.start..=h.hi).all(|n| in_horizon.contains(&n));
    let (status, reason) = if in_horizon.is_empty() {
        (Status::Pass, "no generators needed inside the horizon".to_string())
    } else if every_level && h.hi > h.start {
        (Status::Fail, "new generators at every horizon level".to_string())
    } else {
        (Status::Inconclusive, format!("generators appear inside the horizon at levels {in_horizon:?}"))
    };
    ModuleFgReport { status, generators, reason }
}

/// A degreewise map `M → N`, one matrix `M_n → N_n` per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub comps: Vec<Matrix>,
}

impl ModuleMap {
    pub fn identity(m: &WindowModule) -> ModuleMap {
        ModuleMap { comps: m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect() }
    }

    pub fn comp(&self, lo: i64, n: i64) -> &Matrix {
        &self.comps[(n - lo) as usize]
    }

    pub fn validate(&self, cat: &LinearCategory, src: &WindowModule, dst: &WindowModule) -> Result<()> {
        for n in cat.objects() {
            let c = self.comp(cat.lo, n);
            if c.rows() != dst.dim(n) || c.cols() != src.dim(n) {
                return Err(Error::InvalidMap(format!("component {n} has the wrong shape")));
            }
        }
        for (g, gi) in cat.gens.iter().enumerate() {
            let lhs = self.comp(cat.lo, gi.top()).mul(&src.actions[g])?;
            let rhs = dst.actions[g].mul(self.comp(cat.lo, gi.base))?;
            if lhs != rhs {
                return Err(Error::InvalidMap(format!("does not commute with {}@{}", gi.label, gi.base)));
            }
        }
        if let (Some(a), Some(b)) = (&src.eps, &dst.eps) {
            for n in cat.objects() {
                let i = (n - cat.lo) as usize;
                if self.comps[i].mul(&a[i])? != b[i].mul(&self.comps[i])? {
                    return Err(Error::InvalidMap(format!("does not commute with ε at {n}")));
                }
            }
        }
        Ok(())
    }

    pub fn image(&self, cat: &LinearCategory, dst: &WindowModule) -> Submodule {
        Submodule {
            lo: cat.lo,
            parts: cat
                .objects()
                .map(|n| {
                    let c = self.comp(cat.lo, n);
                    let cols: Vec<Vector> = (0..c.cols()).map(|j| c.column(j)).collect();
                    Subspace::new(dst.field, dst.dim(n), &cols)
                })
                .collect(),
        }
    }

    pub fn kernel(&self, cat: &LinearCategory, src: &WindowModule) -> Submodule {
        Submodule {
            lo: cat.lo,
            parts: cat
                .objects()
                .map(|n| Subspace::new(src.field, src.dim(n), &self.comp(cat.lo, n).kernel_basis()))
                .collect(),
        }
    }

    pub fn cokernel(&self, cat: &LinearCategory, dst: &WindowModule) -> WindowModule {
        self.image(cat, dst).quotient(cat, dst)
    }

    pub fn compose(&self, after: &ModuleMap) -> Result<ModuleMap> {
        Ok(ModuleMap { comps: after.comps.iter().zip(&self.comps).map(|(a, b)| a.mul(b)).collect::<Result<_>>()? })
    }
}

/// The map `𝔞(−,n') → 𝔞(−,n)`, `f ↦ a·f`, for `a ∈ 𝔞(n', n)`.
pub fn yoneda_map(cat: &LinearCategory, a: &Element) -> Result<ModuleMap> {
    cat.check_object(a.top)?;
    cat.check_object(a.bottom)?;
    let (np, n) = (a.top, a.bottom);
    let comps = cat
        .objects()
        .map(|k| {
            let cols: Vec<Vector> = (0..cat.dim(k, np))
                .map(|f| {
                    let v = cat.mul_vec(k, np, n, &a.coords, &SparseVec::unit(f, cat.field));
                    v.to_dense(cat.dim(k, n), cat.field)
                })
                .collect();
            Matrix::from_columns(cat.field, cat.dim(k, n), &cols)
        })
        .collect();
    Ok(ModuleMap { comps })
}

/// The projection `M ⊕ N → M`.
pub fn projection_first(a: &WindowModule, b: &WindowModule) -> ModuleMap {
    ModuleMap {
        comps: a
            .dims
            .iter()
            .zip(&b.dims)
            .map(|(&x, &y)| {
                let mut m = Matrix::zeros(a.field, x, x + y);
                for i in 0..x {
                    m.set(i, i, a.field.one());
                }
                m
            })
            .collect(),
    }
}
