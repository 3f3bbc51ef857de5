//! Complete intersection curves: branches, valuations, the conductor and the
//! structure of `R_C` and `Ω^{m-1}(log C)` in the quasi-homogeneous case.

mod branch;
mod theorems;
mod values;

pub use branch::{Branch, BranchParametrization, Series, Value, ValueVector};
pub use theorems::{
    betti_theorem_check, expected_forms_betti, expected_residue_betti, generating_family, has_embedding_dimension,
    hat_minors, is_quasi_homogeneous, line_arrangement_check, normalization_inclusion_check, omega0,
    plane_characterization, rc_generation_check, residue_omega0, val_identity_check, BettiTheoremReport,
    GenerationReport, LineArrangementReport, Omega0Residue, ValuationReport,
};
pub use values::{conductor, ConductorData, ValueSet};
