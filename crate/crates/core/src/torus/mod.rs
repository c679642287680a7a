//! Field-level calculus on the flat 4-torus (ℝ/Lℤ)⁴: spectral derivatives,
//! the moving-frame structure equations, global integrals, the torsion Dirac
//! operator on spinor fields, and the heat trace of D*D for constant torsion.

mod calculus;
mod dirac;
mod field;
mod grid;
mod heat;

pub use calculus::{
    divergence, holst_action, holst_term_field, nieh_yan, nieh_yan_residual, spectral_d,
    structure_forms, structure_torsion_residual, torsion_parts, wedge, HolstAction, NiehYanReport,
    StructureForms, TorsionParts,
};
pub use dirac::{dirac_apply, lichnerowicz_residual, lichnerowicz_sides, LichnerowiczSides};
pub use field::{l2_inner, random_field, FieldKind, PeriodicField};
pub use grid::TorusGrid;
pub use heat::{
    default_times, fit_from_spectrum, fit_heat_coefficients, heat_trace, mode_cutoff,
    spectral_holst_check, spectral_holst_from_fit, ConstantTorsion, HeatFit, HeatSpectrum,
    SpectralHolstCheck, MAX_CONDITION,
};
