//! Finitely presented modules over the dual numbers.

use crate::exact::dual::DualScalar;
use crate::exact::field::Field;
use crate::exact::matrix::Matrix;
use crate::exact::sparse::{Echelon, SparseVec};

/// `R^generators / (relations)` with `R = k[ε]/(ε²)`.
#[derive(Clone, Debug)]
pub struct DualPresentation {
    pub field: Field,
    pub generators: usize,
    pub relations: Vec<Vec<DualScalar>>,
}

impl DualPresentation {
    pub fn free(field: Field, rank: usize) -> DualPresentation {
        DualPresentation { field, generators: rank, relations: Vec::new() }
    }

    /// k-dimension of the module and the matrix of ε on a k-basis of it.
    pub fn k_structure(&self) -> (usize, Matrix) {
        let g = self.generators;
        let f = self.field;
        // coordinates: 0..g for the a-parts, g..2g for the ε-parts; the
        // ε-parts sit below so that quotient representatives prefer them
        let mut ech = Echelon::new(f);
        for r in &self.relations {
            assert_eq!(r.len(), g);
            let v = SparseVec::from_pairs(
                r.iter().enumerate().flat_map(|(i, x)| [(g + i, x.a.clone()), (i, x.b.clone())]),
            );
            let ev = SparseVec::from_pairs(r.iter().enumerate().map(|(i, x)| (i, x.a.clone())));
            ech.insert(&v);
            ech.insert(&ev);
        }
        let basis: Vec<usize> = (0..2 * g).filter(|&i| !ech.is_pivot(i)).collect();
        let pos = |i: usize| basis.iter().position(|&b| b == i);
        let mut eps = Matrix::zeros(f, basis.len(), basis.len());
        for (col, &b) in basis.iter().enumerate() {
            if b < g {
                continue;
            }
            let img = ech.reduce(&SparseVec::unit(b - g, f));
            for (i, v) in img.iter() {
                eps.set(pos(*i).unwrap(), col, v.clone());
            }
        }
        (basis.len(), eps)
    }
}

/// Rank over the dual numbers of a module given as a k-space with ε-action,
/// or `None` if it is not free.
pub fn free_rank_from_action(dim: usize, eps: &Matrix) -> Option<usize> {
    let r = eps.rank();
    (dim == 2 * r).then_some(r)
}

/// Returns `Some(r)` iff the presented module is free of rank `r`.
pub fn free_rank_dual(p: &DualPresentation) -> Option<usize> {
    let (dim, eps) = p.k_structure();
    free_rank_from_action(dim, &eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_and_residue_field() {
        let f = Field::Rationals;
        assert_eq!(free_rank_dual(&DualPresentation::free(f, 3)), Some(3));
        // k = R/(ε)
        let k = DualPresentation { field: f, generators: 1, relations: vec![vec![DualScalar::eps(f)]] };
        assert_eq!(k.k_structure().0, 1);
        assert_eq!(free_rank_dual(&k), None);
    }

    #[test]
    fn unit_relation_kills_generator() {
        let f = Field::Prime(5);
        let u = DualScalar::new(f.from_i64(2), f.from_i64(1));
        let p = DualPresentation {
            field: f,
            generators: 2,
            relations: vec![vec![u, DualScalar::zero(f)]],
        };
        assert_eq!(free_rank_dual(&p), Some(1));
    }
}
