//! Standard bases of submodules of free modules, syzygies and derived
//! ideal operations, over the polynomial ring or its localization at the
//! origin depending on the ring order.

mod engine;
mod ops;
mod order;
mod types;
mod vector;

pub use ops::{
    combine, determinant, groebner_basis, ideal_contains, ideal_equal, ideal_intersection, ideal_quotient,
    is_zero_module, is_zerodivisor, kernel_mod, minors, module_contains, module_equal, module_kernel, Lift, Lifter,
    StandardBasis, Submodule, ZeroDivisorTest,
};
pub use types::{FreeModuleElement, Ideal, Matrix, PresentedModule};

#[cfg(test)]
pub(crate) mod tests;
