use std::path::PathBuf;

use anyhow::{anyhow, Result};
use zwb_core::deformation::{
    cocycle_check, default_interior, deform_window, ext_vanishing_check, finiteness_lift_report, gauge_equivalent,
    mu2_from_deformed, restrict_deformation, restriction_equivalence_probe, DeformationDatum, GaugeReport,
    HochschildComplex,
};
use zwb_core::exact::Field;
use zwb_core::format;
use zwb_core::modules::{representable, truncate};
use zwb_core::qmod::{qhom as quotient_hom, zgen_report};
use zwb_core::report::Report;
use zwb_core::status::{Horizon, Status};
use zwb_core::tails::check_tails_axioms;
use zwb_core::thread::{extract_thread, helix_family, sequence_report, verify_helix};
use zwb_core::zalgebra::{builtin, grading_report, is_finitely_generated_with, realize_window};

use crate::{default_window, Loaded, CORPUS};

fn file_stem(name: &str) -> String {
    let s: String = name.chars().map(|c| if c.is_alphanumeric() { c } else { '_' }).collect();
    s.trim_end_matches('_').to_string()
}

pub fn generate(name: Option<&str>, window: Option<(i64, i64)>, all: Option<&PathBuf>, field: Option<Field>) -> Result<i32> {
    let field = field.unwrap_or(Field::Rationals);
    let emit = |name: &str| -> Result<String> {
        let mut p = builtin::by_name(name, field)?;
        p.window = Some(window.unwrap_or_else(|| default_window(&p)));
        Ok(format::print(&p))
    };
    match (name, all) {
        (Some(name), None) => print!("{}", emit(name)?),
        (None, Some(dir)) => {
            std::fs::create_dir_all(dir)?;
            for name in CORPUS {
                let path = dir.join(format!("{}.zwb", file_stem(name)));
                std::fs::write(&path, emit(name)?)?;
                println!("{}", path.display());
            }
        }
        _ => return Err(anyhow!("give either a built-in name or --all DIR")),
    }
    Ok(0)
}

fn window_flags(l: &Loaded) -> String {
    format!("window={},{}", l.window.0, l.window.1)
}

pub fn check_algebra(l: &Loaded) -> Result<Report> {
    let (lo, hi) = l.window;
    let w = realize_window(&l.p, lo, hi)?;
    let h = Horizon::default_for(lo, hi);
    let mut r = Report::new("check-algebra", &[&l.canonical, &window_flags(l)]);
    let g = grading_report(&w);
    let ok = g.positively_graded && g.connected && g.locally_finite;
    r.push("grading", Status::from_bool(ok), if ok { String::new() } else { g.note.clone() }, &g);
    let fg = is_finitely_generated_with(&w, h);
    r.push("finite generation", fg.status, fg.reason.clone(), &fg);
    let ax = check_tails_axioms(&w, h)?;
    r.push("tails axioms", Status::from_bool(ax.ok()), "", &ax);
    Ok(r)
}

pub fn zgen(l: &Loaded) -> Result<Report> {
    let (lo, hi) = l.window;
    let w = realize_window(&l.p, lo, hi)?;
    let z = zgen_report(&w, Horizon::default_for(lo, hi))?;
    let mut r = Report::new("zgen", &[&l.canonical, &window_flags(l)]);
    let notes = z.notes.join("; ");
    let why = |s: Status| if s == Status::Inconclusive { notes.clone() } else { String::new() };
    r.push("ample", z.ample.status, why(z.ample.status), &z.ample);
    r.push("t-projective", z.t_projective, why(z.t_projective), &z.t_projective_levels);
    r.push("t-full and t-faithful", z.t_full_faithful, notes.clone(), ());
    r.push("finitely generated", z.finitely_generated, why(z.finitely_generated), ());
    r.push("closure path agrees", z.ab_path, why(z.ab_path), ());
    Ok(r)
}

pub fn helix(l: &Loaded, n: usize, d: i64, (i, len): (i64, i64), twists: Option<(i64, i64)>, seed: u64) -> Result<Report> {
    let (lo, hi) = l.window;
    let w = realize_window(&l.p, lo, hi)?;
    let thr = extract_thread(&w, i, len)?;
    let (a, b) = twists.unwrap_or((-i, -i + 2 * n as i64 - 1));
    let flags = format!("{};period={n};shift={d};thread={i},{len};twists={a},{b};seed={seed}", window_flags(l));
    let mut r = Report::new("helix", &[&l.canonical, &flags]);
    r.seed = Some(seed);
    let fam = helix_family(&w, &thr, a.min(-i)..=b.max(-i + len))?;
    let seq: Vec<_> = (-i..=-i + len).map(|j| fam[&j].clone()).collect();
    let s = sequence_report(&thr, &seq);
    r.push("exceptional", s.exceptional, "", &s.tables);
    r.push("strong", s.strong, "", ());
    r.push("geometric", s.geometric, "", ());
    let fam = fam.into_iter().filter(|(j, _)| (a..=b).contains(j)).collect();
    let h = verify_helix(&thr, &fam, n, d, seed);
    let reasons: Vec<String> =
        h.checks.iter().filter(|c| c.status != Status::Pass).map(|c| format!("E_{}: {}", c.i, c.reason)).collect();
    let reason = if reasons.is_empty() { h.note.clone() } else { reasons.join("; ") };
    r.push(format!("({n},{d})-helix"), h.status, reason, &h);
    Ok(r)
}

fn gauge_check(r: &mut Report, name: &str, g: &GaugeReport) {
    let trivial = g.status == Status::Pass;
    let status = if trivial && !g.verified { Status::Fail } else { Status::Pass };
    let reason = if trivial { "gauge-trivial" } else { "nontrivial class" };
    r.push(name, status, reason, g);
}

pub fn deform(l: &Loaded, (i, len): (i64, i64), interior: Option<(i64, i64)>) -> Result<Report> {
    if !l.p.has_deformation() {
        return Err(anyhow!("{} has no deformation section", l.p.name));
    }
    let (lo, hi) = l.window;
    let dw = deform_window(&l.p, lo, hi)?;
    let flags = format!("{};thread={i},{len};interior={interior:?}", window_flags(l));
    let mut r = Report::new("deform", &[&l.canonical, &flags]);
    let failing = dw.flatness.failing.map(|(n, m)| format!("piece ({n},{m}) is not free")).unwrap_or_default();
    r.push("flatness", dw.flatness.status, failing, &dw.flatness);
    if dw.flatness.status == Status::Fail {
        return Ok(r);
    }
    let lift = finiteness_lift_report(&dw.base, &dw.deformed, Horizon::default_for(lo, hi))?;
    let why = if lift.status == Status::Pass { "" } else { "a condition differs between base and deformation or is unresolved" };
    r.push("finiteness lifts", lift.status, why, &lift);

    let (a, b) = interior.unwrap_or_else(|| default_interior(&dw.base));
    let hc = HochschildComplex::new(&dw.base.restrict(a, b)?, 3)?;
    let datum = mu2_from_deformed(&hc, &dw.deformed.restrict(a, b)?)?;
    let cc = cocycle_check(&hc, &datum);
    let status = if cc.paths_agree { cc.status } else { Status::Fail };
    r.push("window cocycle", status, "", &cc);
    gauge_check(&mut r, "window gauge class", &gauge_equivalent(&hc, &datum, &DeformationDatum::trivial()));

    let thc = HochschildComplex::new(&dw.base.restrict(i - len, i)?, 3)?;
    let rd = restrict_deformation(&hc, &datum, &thc)?;
    r.push("thread cocycle", cocycle_check(&thc, &rd).status, "", ());
    gauge_check(&mut r, "thread gauge class", &gauge_equivalent(&thc, &rd, &DeformationDatum::trivial()));

    let thr = extract_thread(&dw.base, i, len)?;
    let top = if i - len > lo { -i + len + 1 } else { -i + len };
    let twists: Vec<i64> = (-i..=top).collect();
    let ext = ext_vanishing_check(&dw.base, &thr, &twists)?;
    r.push("ext vanishing", ext.status, ext.note.clone(), &ext);
    let probe = restriction_equivalence_probe(&dw.base, interior, i, len)?;
    r.push("restriction probe", probe.status, probe.note.clone(), &probe);
    Ok(r)
}

pub fn qhom(l: &Loaded, from: i64, to: i64, torsion_above: Option<i64>) -> Result<Report> {
    let (lo, hi) = l.window;
    let w = realize_window(&l.p, lo, hi)?;
    let flags = format!("{};from={from};to={to};torsion_above={torsion_above:?}", window_flags(l));
    let mut r = Report::new("qhom", &[&l.canonical, &flags]);
    let mut src = representable(&w, from)?;
    if let Some(k) = torsion_above {
        src = truncate(&w, &src, k).1;
    }
    let dst = representable(&w, to)?;
    let q = quotient_hom(&w, &src, &dst, Horizon::default_for(lo, hi));
    r.push("quotient hom", q.status, q.reason.clone(), &q);
    Ok(r)
}
