//! Multi-logarithmic forms, multi-logarithmic k-vector fields, multi-residues
//! and freeness diagnostics for a pair `X ⊆ C`.

mod checks;
mod forms;
mod freeness;
mod problem;
mod residue;

pub use checks::{
    decomposition_check, divisor_problem, divisor_residue_comparison, equation_independence_check,
    smooth_splitting_check, transform_equations, DecompositionCheck, EquationIndependence, ResidueComparison,
};
pub use forms::{differential, evaluate, hat_form, wedge, wedge_matrix, wedge_of_differentials};
pub use freeness::FreenessReport;
pub use problem::{koszul_certified, KVectorFieldModule, LogFormModule, LogProblem};
pub use residue::{Fraction, FractionalIdeal, ResidueMap, NONZERODIVISOR_BUDGET};
