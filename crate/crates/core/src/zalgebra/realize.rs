//! Exact realization of a presentation on a finite window.
//!
//! For each top object `n`, pieces `𝔞(n,m)` are built for `m = n, n-1, …`
//! as the quotient of `⊕_g g ⊗ 𝔞(n, m+|g|)` by all relation instances
//! based at `m`, multiplied on the right by a basis of the remaining piece.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::category::{BasisLabel, Decomp, GenInstance, LinearCategory, Piece};
use crate::error::{Error, Result};
use crate::exact::{Echelon, Field, Scalar, SparseVec};
use crate::zalgebra::presentation::GradedPresentation;

struct RelInstance {
    base: i64,
    degree: i64,
    terms: Vec<(Scalar, Vec<usize>)>,
    eps_terms: Vec<(Scalar, Vec<usize>)>,
}

/// Pieces with a fixed top, plus left multiplications by generators.
struct TopSweep {
    pieces: BTreeMap<i64, Piece>,
    /// gen instance ↦ images of the basis of `𝔞(n, top(g))` in `𝔞(n, base(g))`.
    lmaps: HashMap<usize, Vec<SparseVec>>,
}

fn instantiate_gens(p: &GradedPresentation, lo: i64, hi: i64) -> (Vec<GenInstance>, HashMap<(usize, i64), usize>) {
    let mut gens = Vec::new();
    let mut at = HashMap::new();
    for m in lo..=hi {
        for (s, g) in p.generators.iter().enumerate() {
            if g.available_at(m) && m + g.degree <= hi {
                at.insert((s, m), gens.len());
                gens.push(GenInstance { label: g.label.clone(), scheme: s, base: m, degree: g.degree });
            }
        }
    }
    (gens, at)
}

/// Places a word of labels at `base`; `Err(object)` names the first object
/// where a letter is missing.
fn place_word(
    p: &GradedPresentation,
    at: &HashMap<(usize, i64), usize>,
    word: &[String],
    base: i64,
) -> std::result::Result<Vec<usize>, i64> {
    let mut s = base;
    let mut out = Vec::with_capacity(word.len());
    for l in word {
        let scheme = p.scheme_at(l, s).ok_or(s)?;
        let inst = *at.get(&(scheme, s)).ok_or(s + p.generators[scheme].degree)?;
        out.push(inst);
        s += p.generators[scheme].degree;
    }
    Ok(out)
}

fn instantiate_relations(
    p: &GradedPresentation,
    at: &HashMap<(usize, i64), usize>,
    lo: i64,
    hi: i64,
    with_eps: bool,
) -> Result<Vec<RelInstance>> {
    let mut out = Vec::new();
    for (idx, r) in p.relations.iter().enumerate() {
        let degree = p.relation_degree(idx)?;
        let bases: Vec<i64> = match r.base {
            Some(b) => {
                if b < lo || b > hi {
                    return Err(Error::OutsideWindow { relation: idx, object: b });
                }
                if b + degree > hi {
                    return Err(Error::OutsideWindow { relation: idx, object: b + degree });
                }
                vec![b]
            }
            None => (lo..=hi - degree).collect(),
        };
        'base: for base in bases {
            let mut inst = RelInstance { base, degree, terms: Vec::new(), eps_terms: Vec::new() };
            let parts = [(&r.terms, false), (&r.eps_terms, true)];
            for (terms, is_eps) in parts {
                if is_eps && !with_eps {
                    continue;
                }
                for t in terms.iter() {
                    match place_word(p, at, &t.word, base) {
                        Ok(w) => {
                            let dst = if is_eps { &mut inst.eps_terms } else { &mut inst.terms };
                            dst.push((t.coeff.clone(), w));
                        }
                        Err(object) if r.base.is_some() => {
                            return Err(Error::OutsideWindow { relation: idx, object })
                        }
                        Err(_) => continue 'base,
                    }
                }
            }
            out.push(inst);
        }
    }
    Ok(out)
}

fn apply_map(map: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, c) in v.iter() {
        out = out.axpy(c, &map[*i]);
    }
    out
}

fn sweep_top(
    field: Field,
    lo: i64,
    n: i64,
    gens: &[GenInstance],
    rels: &[RelInstance],
    with_eps: bool,
) -> TopSweep {
    let mut sw = TopSweep { pieces: BTreeMap::new(), lmaps: HashMap::new() };
    let diag = if with_eps {
        Piece {
            top: n,
            bottom: n,
            labels: vec![BasisLabel { word: vec![], eps: true }, BasisLabel { word: vec![], eps: false }],
            decomp: vec![Decomp::Eps, Decomp::Identity],
            eps: Some(vec![SparseVec::new(), SparseVec::unit(0, field)]),
        }
    } else {
        Piece {
            top: n,
            bottom: n,
            labels: vec![BasisLabel { word: vec![], eps: false }],
            decomp: vec![Decomp::Identity],
            eps: None,
        }
    };
    sw.pieces.insert(n, diag);
    for m in (lo..n).rev() {
        // columns g ⊗ b sorted length-then-lex, ε-multiples below everything else
        let mut cols: Vec<((bool, usize, usize, usize), usize, usize)> = Vec::new();
        for (gi, g) in gens.iter().enumerate().filter(|(_, g)| g.base == m && g.top() <= n) {
            let tail = &sw.pieces[&g.top()];
            for (b, l) in tail.labels.iter().enumerate() {
                cols.push(((!l.eps, l.word.len(), g.scheme, b), gi, b));
            }
        }
        cols.sort();
        let col_of: HashMap<(usize, usize), usize> =
            cols.iter().enumerate().map(|(c, (_, g, b))| ((*g, *b), c)).collect();
        let embed = |g: usize, v: &SparseVec| -> SparseVec {
            SparseVec::from_pairs(v.iter().map(|(b, c)| (col_of[&(g, *b)], c.clone())))
        };
        // a word applied to v ∈ 𝔞(n, base+deg), landing in the column space
        let word_apply = |word: &[usize], v: &SparseVec| -> SparseVec {
            let mut cur = v.clone();
            for h in word[1..].iter().rev() {
                cur = apply_map(&sw.lmaps[h], &cur);
            }
            embed(word[0], &cur)
        };
        let mut ech = Echelon::new(field);
        for r in rels.iter().filter(|r| r.base == m && m + r.degree <= n) {
            let target = &sw.pieces[&(m + r.degree)];
            for u in 0..target.dim() {
                let uv = SparseVec::unit(u, field);
                let eu = match &target.eps {
                    Some(e) => e[u].clone(),
                    None => SparseVec::new(),
                };
                let mut row = SparseVec::new();
                for (c, w) in &r.terms {
                    row = row.axpy(c, &word_apply(w, &uv));
                }
                if !eu.is_zero() {
                    for (c, w) in &r.eps_terms {
                        row = row.axpy(c, &word_apply(w, &eu));
                    }
                }
                ech.insert(&row);
            }
        }
        let normal: Vec<usize> = (0..cols.len()).filter(|&c| !ech.is_pivot(c)).collect();
        let idx_of: HashMap<usize, usize> = normal.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let to_basis = |v: &SparseVec| -> SparseVec {
            let r = ech.reduce(v);
            SparseVec::from_pairs(r.iter().map(|(c, x)| (idx_of[c], x.clone())))
        };
        let mut labels = Vec::with_capacity(normal.len());
        let mut decomp = Vec::with_capacity(normal.len());
        for &c in &normal {
            let (_, g, b) = cols[c];
            let tl = &sw.pieces[&gens[g].top()].labels[b];
            let mut word = vec![g];
            word.extend_from_slice(&tl.word);
            labels.push(BasisLabel { word, eps: tl.eps });
            decomp.push(Decomp::Prod { gen: g, tail: b });
        }
        let eps = with_eps.then(|| {
            normal
                .iter()
                .map(|&c| {
                    let (_, g, b) = cols[c];
                    let tail = &sw.pieces[&gens[g].top()];
                    let eb = &tail.eps.as_ref().unwrap()[b];
                    to_basis(&embed(g, eb))
                })
                .collect()
        });
        for (gi, g) in gens.iter().enumerate().filter(|(_, g)| g.base == m && g.top() <= n) {
            let tail_dim = sw.pieces[&g.top()].dim();
            let map = (0..tail_dim).map(|b| to_basis(&SparseVec::unit(col_of[&(gi, b)], field))).collect();
            sw.lmaps.insert(gi, map);
        }
        sw.pieces.insert(m, Piece { top: n, bottom: m, labels, decomp, eps });
    }
    sw
}

fn mul_tables_for_top(
    n: i64,
    lo: i64,
    field: Field,
    gens: &[GenInstance],
    pieces: &BTreeMap<(i64, i64), Piece>,
    lmaps: &HashMap<usize, Vec<SparseVec>>,
) -> Vec<((i64, i64, i64), Vec<SparseVec>)> {
    let mut out = Vec::new();
    for j in lo..=n {
        let dy = pieces[&(n, j)].dim();
        let mut done: HashMap<i64, Vec<SparseVec>> = HashMap::new();
        for m in (lo..=j).rev() {
            let px = &pieces[&(j, m)];
            let mut table = Vec::with_capacity(px.dim() * dy);
            for x in 0..px.dim() {
                for y in 0..dy {
                    let v = match px.decomp[x] {
                        Decomp::Identity => SparseVec::unit(y, field),
                        Decomp::Eps => pieces[&(n, j)].eps.as_ref().unwrap()[y].clone(),
                        Decomp::Prod { gen, tail } => {
                            let inner = &done[&gens[gen].top()][tail * dy + y];
                            apply_map(&lmaps[&gen], inner)
                        }
                    };
                    table.push(v);
                }
            }
            done.insert(m, table);
        }
        out.extend(done.into_iter().map(|(m, t)| ((n, j, m), t)));
    }
    out
}

/// Realizes `p` on `[lo, hi]`. With `with_eps`, every piece is computed over
/// the dual numbers as a k-space carrying the action of ε.
pub fn realize(p: &GradedPresentation, lo: i64, hi: i64, with_eps: bool) -> Result<LinearCategory> {
    if hi < lo {
        return Err(Error::Precondition(format!("empty window [{lo},{hi}]")));
    }
    p.validate()?;
    let field = p.field;
    let (gens, at) = instantiate_gens(p, lo, hi);
    let rels = instantiate_relations(p, &at, lo, hi, with_eps)?;
    let sweeps: Vec<(i64, TopSweep)> =
        (lo..=hi).into_par_iter().map(|n| (n, sweep_top(field, lo, n, &gens, &rels, with_eps))).collect();
    let mut pieces = BTreeMap::new();
    let mut lmaps_by_top = HashMap::new();
    for (n, sw) in sweeps {
        for (m, piece) in sw.pieces {
            pieces.insert((n, m), piece);
        }
        lmaps_by_top.insert(n, sw.lmaps);
    }
    let mul: HashMap<_, _> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(|n| mul_tables_for_top(n, lo, field, &gens, &pieces, &lmaps_by_top[&n]))
        .collect();
    let gen_vecs = gens
        .iter()
        .enumerate()
        .map(|(gi, g)| {
            let top = g.top();
            let id = pieces[&(top, top)].decomp.iter().position(|d| *d == Decomp::Identity).unwrap();
            lmaps_by_top[&top][&gi][id].clone()
        })
        .collect();
    Ok(LinearCategory { field, lo, hi, gens, gen_vecs, pieces, mul, deformed: with_eps })
}
