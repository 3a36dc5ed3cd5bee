//! Block eigensolvers on operators given by their eigendecomposition: block
//! power and Chebyshev iterations, block Lanczos (block Krylov with full
//! re-orthogonalization), Rayleigh–Ritz extraction and shift-and-invert.

mod chebyshev;
mod krylov;
mod ritz;
mod shift_invert;
mod spectrum;

pub use chebyshev::chebyshev_block_step;
pub use krylov::{
    block_krylov_basis, block_power, krylov_transform_check, krylov_transform_discrepancy, BlockKrylov, DEFLATION_TOL,
};
pub use ritz::{rayleigh_ritz, ritz_values, RitzSet};
pub use shift_invert::{pencil_eigenvalues_by_reduction, shift_invert_operator, Pencil, ShiftInvert, ShiftSign};
pub use spectrum::{Eigenbasis, LinearOperator, Spectrum};
