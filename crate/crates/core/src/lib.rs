//! Exact computations with presented Z-algebras on finite object windows.

pub mod category;
pub mod deformation;
pub mod error;
pub mod exact;
pub mod format;
pub mod modules;
pub mod qmod;
pub mod report;
pub mod status;
pub mod tails;
pub mod thread;
pub mod zalgebra;

pub use error::{Error, Result};
pub use exact::{DualScalar, Field, Matrix, Scalar};
