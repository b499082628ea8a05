//! Symbolic presentations of positively graded Z-algebras.

use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorScheme {
    pub label: String,
    pub degree: i64,
    /// Objects where the generator starts; `None` means every object.
    pub at: Option<Vec<i64>>,
}

impl GeneratorScheme {
    pub fn periodic(label: impl Into<String>, degree: i64) -> GeneratorScheme {
        GeneratorScheme { label: label.into(), degree, at: None }
    }

    pub fn available_at(&self, m: i64) -> bool {
        self.at.as_ref().is_none_or(|v| v.contains(&m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub word: Vec<String>,
}

impl Term {
    pub fn new(coeff: Scalar, word: &[&str]) -> Term {
        Term { coeff, word: word.iter().map(|s| s.to_string()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationScheme {
    pub terms: Vec<Term>,
    /// Fixed bottom object, or `None` to impose the relation at every object.
    pub base: Option<i64>,
    /// First-order correction: the relation becomes `terms + ε·eps_terms`.
    pub eps_terms: Vec<Term>,
}

impl RelationScheme {
    pub fn periodic(terms: Vec<Term>) -> RelationScheme {
        RelationScheme { terms, base: None, eps_terms: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    pub name: String,
    pub field: Field,
    pub generators: Vec<GeneratorScheme>,
    pub relations: Vec<RelationScheme>,
    /// Suggested window, carried through files.
    pub window: Option<(i64, i64)>,
}

impl GradedPresentation {
    pub fn new(name: impl Into<String>, field: Field) -> GradedPresentation {
        GradedPresentation { name: name.into(), field, generators: Vec::new(), relations: Vec::new(), window: None }
    }

    pub fn has_deformation(&self) -> bool {
        self.relations.iter().any(|r| !r.eps_terms.is_empty())
    }

    /// The presentation with every ε-correction dropped.
    pub fn reduction(&self) -> GradedPresentation {
        let mut p = self.clone();
        for r in &mut p.relations {
            r.eps_terms.clear();
        }
        p
    }

    pub fn degree_of(&self, label: &str) -> Option<i64> {
        self.generators.iter().find(|g| g.label == label).map(|g| g.degree)
    }

    pub fn word_degree(&self, word: &[String]) -> Option<i64> {
        word.iter().map(|l| self.degree_of(l)).sum()
    }

    /// Index of the scheme providing `label` at object `m`.
    pub fn scheme_at(&self, label: &str, m: i64) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label && g.available_at(m))
    }

    /// Degree of a relation, after checking homogeneity.
    pub fn relation_degree(&self, idx: usize) -> Result<i64> {
        let r = &self.relations[idx];
        let mut deg = None;
        for t in r.terms.iter().chain(&r.eps_terms) {
            if t.word.is_empty() {
                return Err(Error::Presentation(format!("relation {idx} has an empty word")));
            }
            let d = self
                .word_degree(&t.word)
                .ok_or_else(|| Error::Presentation(format!("relation {idx} uses an unknown generator")))?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Presentation(format!(
                        "relation {idx} is not homogeneous (degrees {e} and {d})"
                    )))
                }
                _ => {}
            }
        }
        deg.ok_or_else(|| Error::Presentation(format!("relation {idx} has no terms")))
    }

    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree < 1 {
                return Err(Error::Presentation(format!(
                    "generator {} has degree {}; only positive degrees are allowed",
                    g.label, g.degree
                )));
            }
            if g.label.is_empty() || !g.label.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Presentation(format!("bad generator label {:?}", g.label)));
            }
            for h in &self.generators[..i] {
                if h.label != g.label {
                    continue;
                }
                if h.degree != g.degree {
                    return Err(Error::Presentation(format!("label {} used with two degrees", g.label)));
                }
                let clash = match (&h.at, &g.at) {
                    (Some(a), Some(b)) => a.iter().any(|m| b.contains(m)),
                    _ => true,
                };
                if clash {
                    return Err(Error::Presentation(format!("label {} is not unique per object", g.label)));
                }
            }
        }
        for i in 0..self.relations.len() {
            self.relation_degree(i)?;
            if self.relations[i].terms.is_empty() {
                return Err(Error::Presentation(format!("relation {i} has no base terms")));
            }
        }
        Ok(())
    }
}
