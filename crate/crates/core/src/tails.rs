//! Covers of representables, the tails system and its pullbacks.

use serde::Serialize;

use crate::category::LinearCategory;
use crate::error::{Error, Result};
use crate::exact::{Matrix, SparseVec, Subspace, Vector};
use crate::modules::{is_finitely_generated_module, representable, truncate, ModuleMap, Submodule, WindowModule};
use crate::status::{Horizon, Status};
use crate::zalgebra::Element;

/// A submodule `R ⊆ 𝔞(−,m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub target: i64,
    pub sub: Submodule,
}

impl Cover {
    pub fn whole(cat: &LinearCategory, m: i64) -> Result<Cover> {
        let rep = representable(cat, m)?;
        Ok(Cover { target: m, sub: Submodule::full(&rep) })
    }

    pub fn zero(cat: &LinearCategory, m: i64) -> Result<Cover> {
        let rep = representable(cat, m)?;
        Ok(Cover { target: m, sub: Submodule::zero(&rep) })
    }

    /// `𝔞(−,m)_{≥n}`.
    pub fn tail(cat: &LinearCategory, m: i64, n: i64) -> Result<Cover> {
        let rep = representable(cat, m)?;
        Ok(Cover { target: m, sub: truncate(cat, &rep, n).0 })
    }

    /// The cover generated by the given elements of `𝔞(−,m)`.
    pub fn generated(cat: &LinearCategory, m: i64, elements: &[Element]) -> Result<Cover> {
        let rep = representable(cat, m)?;
        let mut gens = Vec::new();
        for e in elements {
            if e.bottom != m {
                return Err(Error::Precondition(format!("element based at {} is not in 𝔞(−,{m})", e.bottom)));
            }
            gens.push((e.top, e.coords.to_dense(cat.dim(e.top, m), cat.field)));
        }
        Ok(Cover { target: m, sub: Submodule::generated(cat, &rep, &gens) })
    }

    /// Whether `𝔞(−,m)_{≥n} ⊆ R`.
    pub fn contains_tail(&self, cat: &LinearCategory, n: i64) -> bool {
        (n.max(self.target)..=cat.hi).all(|k| self.sub.part(k).is_full())
    }
}

/// The two covering systems that are decided by a predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoveringSystem {
    Trivial,
    LTails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailsStatus {
    pub status: Status,
    /// Least `n` with `𝔞(−,m)_{≥n} ⊆ R` inside the window.
    pub least_level: Option<i64>,
    /// A basis element missing from `R` at the highest level where `R` is not full.
    pub witness: Option<String>,
    pub witness_level: Option<i64>,
}

pub fn in_l_tails(cat: &LinearCategory, r: &Cover, h: Horizon) -> TailsStatus {
    let m = r.target;
    let full = |k: i64| r.sub.part(k).is_full();
    let mut least = None;
    for n in (m..=cat.hi).rev() {
        if full(n) {
            least = Some(n);
        } else {
            break;
        }
    }
    let blocking = match least {
        Some(n) if n == m => None,
        Some(n) => Some(n - 1),
        None => Some(cat.hi),
    };
    let witness = blocking.map(|k| {
        let j = r.sub.part(k).free_columns()[0];
        cat.label(k, m, j)
    });
    let status = match least {
        Some(n) if h.certifies(m, n) => Status::Pass,
        _ => Status::Fail,
    };
    TailsStatus { status, least_level: least, witness, witness_level: blocking }
}

/// `P = {f ∈ 𝔞(−,n') | a·f ∈ R}` for `a ∈ 𝔞(n', m)`.
pub fn pullback_cover(cat: &LinearCategory, r: &Cover, a: &Element) -> Result<Cover> {
    if a.bottom != r.target {
        return Err(Error::NotComposable(format!("element ends at {} but the cover is on {}", a.bottom, r.target)));
    }
    let (np, m) = (a.top, a.bottom);
    cat.check_object(np)?;
    let f = cat.field;
    let parts = cat
        .objects()
        .map(|k| {
            let src = cat.dim(k, np);
            let rk = r.sub.part(k);
            let cols: Vec<Vector> = (0..src)
                .map(|j| {
                    let img = cat.mul_vec(k, np, m, &a.coords, &SparseVec::unit(j, f));
                    rk.project(&img.to_dense(cat.dim(k, m), f))
                })
                .collect();
            let q = rk.ambient() - rk.dim();
            let kernel = if q == 0 {
                return Subspace::full(f, src);
            } else {
                Matrix::from_columns(f, q, &cols).kernel_basis()
            };
            Subspace::new(f, src, &kernel)
        })
        .collect();
    Ok(Cover { target: np, sub: Submodule { lo: cat.lo, parts } })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub identity_violations: Vec<i64>,
    /// `(m, n, n', basis index of a)` with `tail(max(n,n')) ⊄ a⁻¹(tail(n))`.
    pub pullback_violations: Vec<(i64, i64, i64, usize)>,
    pub checked_pullbacks: usize,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.identity_violations.is_empty() && self.pullback_violations.is_empty()
    }
}

/// Identity axiom for every object and the pullback axiom for every tail
/// along every basis element of the window.
pub fn check_tails_axioms(cat: &LinearCategory, h: Horizon) -> Result<AxiomReport> {
    let mut rep = AxiomReport { identity_violations: Vec::new(), pullback_violations: Vec::new(), checked_pullbacks: 0 };
    for m in cat.objects() {
        let whole = Cover::whole(cat, m)?;
        let s = in_l_tails(cat, &whole, h);
        if s.status != Status::Pass || s.least_level != Some(m) {
            rep.identity_violations.push(m);
        }
        for n in m..=cat.hi {
            let t = Cover::tail(cat, m, n)?;
            for np in m..=cat.hi {
                for a in 0..cat.dim(np, m) {
                    let p = pullback_cover(cat, &t, &Element::basis(np, m, a, cat))?;
                    rep.checked_pullbacks += 1;
                    if !p.contains_tail(cat, n.max(np)) {
                        rep.pullback_violations.push((m, n, np, a));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `S ⊆ 𝔞(−,0)` generated by `x_i·𝔞(−,1)_{≥i}` for the variables `x1, x2, …`.
pub fn countable_example_cover(cat: &LinearCategory) -> Result<Cover> {
    cat.check_object(0)?;
    cat.check_object(1)?;
    let mut elements = Vec::new();
    for (gi, g) in cat.gens_at(0) {
        let i: i64 = g.label.trim_start_matches('x').parse().map_err(|_| Error::Precondition(format!("unexpected generator {}", g.label)))?;
        let xi = Element::generator(cat, gi);
        for k in i.max(1)..=cat.hi {
            for f in 0..cat.dim(k, 1) {
                elements.push(crate::zalgebra::compose(cat, &xi, &Element::basis(k, 1, f, cat))?);
            }
        }
    }
    Cover::generated(cat, 0, &elements)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlueingVerdict {
    GlueingFailure,
    NoFailure,
    GenuinelyNonCovering,
}

impl std::fmt::Display for GlueingVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GlueingVerdict::GlueingFailure => "glueing failure",
            GlueingVerdict::NoFailure => "no failure",
            GlueingVerdict::GenuinelyNonCovering => "genuinely non-covering",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackEntry {
    pub along: String,
    pub level: i64,
    /// Least `j` with `𝔞(−,level)_{≥j}` inside the pullback, if any.
    pub contains_tail_from: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlueingReport {
    pub s_status: TailsStatus,
    pub covering: String,
    pub pullbacks: Vec<PullbackEntry>,
    pub verdict: GlueingVerdict,
}

/// Pulls `S` back along the module generators of the covering `T`.
pub fn glueing_failure_witness(cat: &LinearCategory, s: &Cover, t: &Cover, h: Horizon) -> Result<GlueingReport> {
    if s.target != t.target {
        return Err(Error::Precondition("S and T must cover the same object".into()));
    }
    let m = s.target;
    let s_status = in_l_tails(cat, s, h);
    let rep = representable(cat, m)?;
    let t_mod = t.sub.as_module(cat, &rep);
    let gens = is_finitely_generated_module(cat, &t_mod, h).generators;
    let mut pullbacks = Vec::new();
    for (k, j) in gens {
        let v = &t.sub.part(k).basis()[j];
        let a = Element { top: k, bottom: m, coords: SparseVec::from_dense(v) };
        let p = pullback_cover(cat, s, &a)?;
        let along = describe(cat, &a);
        let contains_tail_from = (k..=cat.hi).find(|&j| p.contains_tail(cat, j));
        pullbacks.push(PullbackEntry { along, level: k, contains_tail_from });
    }
    let all_cover = pullbacks.iter().all(|p| p.contains_tail_from.is_some());
    let verdict = if s_status.status == Status::Pass {
        GlueingVerdict::NoFailure
    } else if all_cover && t.contains_tail(cat, cat.hi) {
        GlueingVerdict::GlueingFailure
    } else {
        GlueingVerdict::GenuinelyNonCovering
    };
    let covering = match (t.target..=cat.hi).find(|&n| t.contains_tail(cat, n)) {
        Some(n) => format!("tail({n}) of representable({m})"),
        None => format!("submodule of representable({m})"),
    };
    Ok(GlueingReport { s_status, covering, pullbacks, verdict })
}

fn describe(cat: &LinearCategory, a: &Element) -> String {
    let terms: Vec<String> = a
        .coords
        .iter()
        .map(|(i, c)| {
            let l = cat.label(a.top, a.bottom, *i);
            if c.is_one() {
                l
            } else {
                format!("{c} {l}")
            }
        })
        .collect();
    terms.join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementCertificate {
    pub object: i64,
    pub index: usize,
    pub n0: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TMapReport {
    pub status: Status,
    pub certificates: Vec<ElementCertificate>,
    pub witness: Option<(i64, usize)>,
}

/// Least level from which the submodule generated by `x ∈ M_m` vanishes.
fn vanishing_level(cat: &LinearCategory, module: &WindowModule, m: i64, x: Vector) -> Option<i64> {
    let span = Submodule::generated(cat, module, &[(m, x)]);
    match cat.objects().filter(|&n| span.dim(n) > 0).max() {
        None => Some(m),
        Some(t) if t < cat.hi => Some(t + 1),
        Some(_) => None,
    }
}

fn judge(certificates: Vec<ElementCertificate>, system: CoveringSystem, h: Horizon) -> TMapReport {
    let mut status = Status::Pass;
    let mut witness = None;
    for c in &certificates {
        let verdict = match (system, c.n0) {
            (_, None) => Status::Fail,
            (CoveringSystem::Trivial, Some(n0)) => Status::from_bool(n0 == c.object),
            (CoveringSystem::LTails, Some(n0)) => {
                if h.certifies(c.object, n0) {
                    Status::Pass
                } else {
                    Status::Inconclusive
                }
            }
        };
        if verdict != Status::Pass && witness.is_none() {
            witness = Some((c.object, c.index));
        }
        status = status.and(verdict);
    }
    TMapReport { status, certificates, witness }
}

/// Every `y ∈ N_m` has `y·𝔞(n,m) ⊆ im f` from some covering level on.
pub fn is_t_epi(
    cat: &LinearCategory,
    f: &ModuleMap,
    src: &WindowModule,
    dst: &WindowModule,
    system: CoveringSystem,
    h: Horizon,
) -> Result<TMapReport> {
    f.validate(cat, src, dst)?;
    let coker = f.cokernel(cat, dst);
    let image = f.image(cat, dst);
    let mut certs = Vec::new();
    for m in cat.objects() {
        for i in 0..dst.dim(m) {
            let y = image.part(m).project(&dst.unit_vec(m, i));
            certs.push(ElementCertificate { object: m, index: i, n0: vanishing_level(cat, &coker, m, y) });
        }
    }
    Ok(judge(certs, system, h))
}

/// Every `x ∈ ker f_m` has `x·𝔞(n,m) = 0` from some covering level on.
pub fn is_t_mono(
    cat: &LinearCategory,
    f: &ModuleMap,
    src: &WindowModule,
    dst: &WindowModule,
    system: CoveringSystem,
    h: Horizon,
) -> Result<TMapReport> {
    f.validate(cat, src, dst)?;
    let kernel = f.kernel(cat, src);
    let mut certs = Vec::new();
    for m in cat.objects() {
        for (i, x) in kernel.part(m).basis().iter().enumerate() {
            certs.push(ElementCertificate { object: m, index: i, n0: vanishing_level(cat, src, m, x.clone()) });
        }
    }
    Ok(judge(certs, system, h))
}

/// The reduction `ε ↦ 0` on the piece `(n,m)`: deformed basis → base basis.
pub fn reduction_matrix(deformed: &LinearCategory, base: &LinearCategory, n: i64, m: i64) -> Result<Matrix> {
    let (bp, dp) = match (base.piece(n, m), deformed.piece(n, m)) {
        (Some(b), Some(d)) => (b, d),
        _ => return Err(Error::ObjectOutOfRange(n)),
    };
    let mut r = Matrix::zeros(base.field, bp.dim(), dp.dim());
    for (j, l) in dp.labels.iter().enumerate() {
        if l.eps {
            continue;
        }
        let i = bp
            .labels
            .iter()
            .position(|b| b.word == l.word)
            .ok_or_else(|| Error::Precondition(format!("deformed basis word at ({n},{m}) has no base counterpart")))?;
        r.set(i, j, base.field.one());
    }
    Ok(r)
}

/// Image of a cover of `𝔟(−,m)` under reduction.
pub fn transport_cover(deformed: &LinearCategory, base: &LinearCategory, s: &Cover) -> Result<Cover> {
    let m = s.target;
    let parts = base
        .objects()
        .map(|k| {
            let r = reduction_matrix(deformed, base, k, m).unwrap_or_else(|_| Matrix::zeros(base.field, 0, 0));
            let imgs: Vec<Vector> = s.sub.part(k).basis().iter().map(|v| r.mul_vec(v).expect("shape")).collect();
            Subspace::new(base.field, base.dim(k, m), &imgs)
        })
        .collect();
    Ok(Cover { target: m, sub: Submodule { lo: base.lo, parts } })
}

/// Full preimage of a cover of `𝔞(−,m)` under reduction.
pub fn inverse_transport(deformed: &LinearCategory, base: &LinearCategory, t: &Cover) -> Result<Cover> {
    let m = t.target;
    let f = base.field;
    let parts = deformed
        .objects()
        .map(|k| {
            let src = deformed.dim(k, m);
            let tk = t.sub.part(k);
            let q = tk.ambient() - tk.dim();
            if q == 0 {
                return Subspace::full(f, src);
            }
            let r = reduction_matrix(deformed, base, k, m).expect("same window");
            let cols: Vec<Vector> = (0..src).map(|j| tk.project(&r.column(j))).collect();
            Subspace::new(f, src, &Matrix::from_columns(f, q, &cols).kernel_basis())
        })
        .collect();
    Ok(Cover { target: m, sub: Submodule { lo: deformed.lo, parts } })
}
