//! First-order deformations: Hochschild cochains, flatness, gauge and
//! restriction to threads.

mod datum;
mod flat;
mod hochschild;
mod probe;

pub use datum::{
    cocycle_check, gauge_equivalent, mu2_from_deformed, restrict_deformation, CocycleReport, DeformationDatum,
    GaugeReport,
};
pub use flat::{
    deform_window, finiteness_lift_report, flatness, reduce_complex, DeformedWindow, FlatnessReport, LiftReport,
    LiftRow, PieceFlatness,
};
pub use hochschild::{
    check_connected, default_interior, hochschild_dims, interior_hochschild, Cell, HochschildComplex, HochschildDims,
};
pub use probe::{ext_vanishing_check, restriction_equivalence_probe, ExtPair, ExtReport, ProbeReport};
