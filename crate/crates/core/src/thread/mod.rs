//! Thread algebras, bounded complexes of projectives over them, RHom,
//! mutations and helix checks.

mod algebra;
mod complex;
mod helix;
mod mutation;
mod rhom;

pub use algebra::{extract_thread, ThreadAlgebra, ThreadModule};
pub use complex::{ChainMap, Complex};
pub use helix::{
    helix_family, representative, resolve, restricted_representable, sequence_report, verify_helix, HelixCheck,
    HelixReport, PairTable, SequenceReport,
};
pub use mutation::{
    coevaluation, composite_mutation, evaluation, iso_in_derived, left_mutation, right_mutation, IsoReport, Side,
};
pub use rhom::{cohomology_profile, hom_complex, HomComplex, RHomTable};
