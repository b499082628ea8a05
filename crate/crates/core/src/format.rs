//! The line-oriented algebra file format.
//!
//! ```text
//! # comments run to the end of the line
//! name: projective_space(1)
//! field: Q
//! window: -4 4
//!
//! [generators]
//! x0 1
//! x1 1
//!
//! [relations]
//! 1 x0*x1 + -1 x1*x0
//!
//! [deformation]
//! 0: -1 x1*x0
//! ```
//!
//! A generator line may end in `@ m1,m2,...` to restrict it to those
//! objects; a relation line may end in `@ m` to impose it at one object only.
//! Deformation lines give the ε-correction of the relation with that index.

use crate::error::{Error, Result};
use crate::exact::Field;
use crate::zalgebra::{GeneratorScheme, GradedPresentation, RelationScheme, Term};
use std::fmt::Write;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Generators,
    Relations,
    Deformation,
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn is_label(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(h) if h.is_alphabetic() || h == '_') && c.all(|c| c.is_alphanumeric() || c == '_')
}

fn split_at_sign(s: &str) -> (&str, Option<&str>) {
    match s.split_once('@') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s.trim(), None),
    }
}

fn parse_int(line: usize, s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| err(line, format!("expected an integer, found `{s}`")))
}

fn parse_sum(line: usize, s: &str, field: Field) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    for chunk in s.split(" + ") {
        let toks: Vec<&str> = chunk.split_whitespace().collect();
        let (coeff, word) = match toks.as_slice() {
            [w] => (field.one(), *w),
            [c, w] => (field.parse_scalar(c).map_err(|e| err(line, e))?, *w),
            _ => return Err(err(line, format!("cannot read term `{}`", chunk.trim()))),
        };
        let word: Vec<String> = word.split('*').map(str::to_string).collect();
        if let Some(bad) = word.iter().find(|l| !is_label(l)) {
            return Err(err(line, format!("bad label `{bad}`")));
        }
        terms.push(Term { coeff, word });
    }
    Ok(terms)
}

/// Parses a file; `field_override` replaces the declared field.
pub fn parse_with(text: &str, field_override: Option<Field>) -> Result<GradedPresentation> {
    let mut name = None;
    let mut field = None;
    let mut window = None;
    let mut section = Section::Header;
    let mut generators = Vec::new();
    let mut relations: Vec<RelationScheme> = Vec::new();
    let mut eps: Vec<(usize, usize, Vec<Term>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let next = match line {
            "[generators]" => Some(Section::Generators),
            "[relations]" => Some(Section::Relations),
            "[deformation]" => Some(Section::Deformation),
            _ if line.starts_with('[') => return Err(err(ln, format!("unknown section {line}"))),
            _ => None,
        };
        if let Some(s) = next {
            if s as u8 <= section as u8 {
                return Err(err(ln, "sections must appear once, in order"));
            }
            if section == Section::Header && s != Section::Generators {
                return Err(err(ln, "missing [generators] section"));
            }
            section = s;
            continue;
        }
        let field_now = || field.or(field_override).ok_or_else(|| err(ln, "header has no field"));
        match section {
            Section::Header => {
                let (key, value) = line.split_once(':').ok_or_else(|| err(ln, "expected `key: value`"))?;
                let value = value.trim();
                match key.trim() {
                    "name" => name = Some(value.to_string()),
                    "field" => {
                        let declared: Field = value.parse().map_err(|e| err(ln, e))?;
                        field = Some(field_override.unwrap_or(declared));
                    }
                    "window" => {
                        let v: Vec<&str> = value.split_whitespace().collect();
                        if v.len() != 2 {
                            return Err(err(ln, "window needs two integers"));
                        }
                        window = Some((parse_int(ln, v[0])?, parse_int(ln, v[1])?));
                    }
                    k => return Err(err(ln, format!("unknown header key `{k}`"))),
                }
            }
            Section::Generators => {
                let (body, at) = split_at_sign(line);
                let toks: Vec<&str> = body.split_whitespace().collect();
                if toks.len() != 2 || !is_label(toks[0]) {
                    return Err(err(ln, "expected `label degree`"));
                }
                let at = match at {
                    None => None,
                    Some(list) => Some(list.split(',').map(|m| parse_int(ln, m)).collect::<Result<Vec<_>>>()?),
                };
                generators.push(GeneratorScheme { label: toks[0].into(), degree: parse_int(ln, toks[1])?, at });
            }
            Section::Relations => {
                let (body, at) = split_at_sign(line);
                let base = at.map(|m| parse_int(ln, m)).transpose()?;
                relations.push(RelationScheme { terms: parse_sum(ln, body, field_now()?)?, base, eps_terms: Vec::new() });
            }
            Section::Deformation => {
                let (idx, body) = line.split_once(':').ok_or_else(|| err(ln, "expected `index: terms`"))?;
                let idx: usize = idx.trim().parse().map_err(|_| err(ln, format!("bad relation index `{idx}`")))?;
                eps.push((ln, idx, parse_sum(ln, body, field_now()?)?));
            }
        }
    }
    let field = field.or(field_override).ok_or_else(|| Error::Parse("header has no field".into()))?;
    for (ln, idx, terms) in eps {
        let r = relations.get_mut(idx).ok_or_else(|| err(ln, format!("no relation {idx}")))?;
        if !r.eps_terms.is_empty() {
            return Err(err(ln, format!("relation {idx} deformed twice")));
        }
        r.eps_terms = terms;
    }
    let name = name.ok_or_else(|| Error::Parse("header has no name".into()))?;
    let p = GradedPresentation { name, field, generators, relations, window };
    p.validate()?;
    Ok(p)
}

pub fn parse(text: &str) -> Result<GradedPresentation> {
    parse_with(text, None)
}

fn write_sum(out: &mut String, terms: &[Term]) {
    let parts: Vec<String> = terms.iter().map(|t| format!("{} {}", t.coeff, t.word.join("*"))).collect();
    out.push_str(&parts.join(" + "));
}

/// The canonical text of a presentation.
pub fn print(p: &GradedPresentation) -> String {
    let mut out = String::new();
    writeln!(out, "name: {}", p.name).unwrap();
    writeln!(out, "field: {}", p.field).unwrap();
    if let Some((lo, hi)) = p.window {
        writeln!(out, "window: {lo} {hi}").unwrap();
    }
    out.push_str("\n[generators]\n");
    for g in &p.generators {
        write!(out, "{} {}", g.label, g.degree).unwrap();
        if let Some(at) = &g.at {
            let at: Vec<String> = at.iter().map(i64::to_string).collect();
            write!(out, " @ {}", at.join(",")).unwrap();
        }
        out.push('\n');
    }
    out.push_str("\n[relations]\n");
    for r in &p.relations {
        write_sum(&mut out, &r.terms);
        if let Some(b) = r.base {
            write!(out, " @ {b}").unwrap();
        }
        out.push('\n');
    }
    if p.has_deformation() {
        out.push_str("\n[deformation]\n");
        for (i, r) in p.relations.iter().enumerate().filter(|(_, r)| !r.eps_terms.is_empty()) {
            write!(out, "{i}: ").unwrap();
            write_sum(&mut out, &r.eps_terms);
            out.push('\n');
        }
    }
    out
}
