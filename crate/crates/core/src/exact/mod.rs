pub mod dual;
pub mod dual_module;
pub mod field;
pub mod matrix;
pub mod sparse;
pub mod subspace;

pub use dual::DualScalar;
pub use dual_module::{free_rank_dual, free_rank_from_action, DualPresentation};
pub use field::{Field, Scalar};
pub use matrix::{Matrix, Rref, Vector};
pub use sparse::{Echelon, SparseSolver, SparseVec};
pub use subspace::Subspace;
