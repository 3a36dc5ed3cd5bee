//! Dense matrix kernels: orthonormalization, SVD, Hermitian eigendecomposition,
//! pseudoinverse and norms.

mod eig;
mod matrix;
mod qr;
mod solve;
mod svd;

pub use eig::{check_hermitian, hermitian_eig, hermitian_eigenvalues, EIG_SWEEP_LIMIT};
pub use matrix::{axpy, dot, norm, scale_in_place, Matrix};
pub use qr::{orthonormal_complement, orthonormalize, orthonormalize_with, HouseholderQr};
pub use solve::{cholesky, inverse, Lu};
pub use svd::{singular_values, svd, two_norm, SvdResult, SVD_SWEEP_LIMIT};

use num_traits::{Float, Zero};

use crate::error::Result;
use crate::scalar::Scalar;

pub const DEFAULT_PINV_TOL: f64 = 1e-12;

/// Moore–Penrose pseudoinverse; singular values at or below
/// `rel_tol · σ_max` are treated as zero.
pub fn pseudoinverse<S: Scalar>(m: &Matrix<S>, rel_tol: S::Real) -> Result<Matrix<S>> {
    let s = svd(m)?;
    let top = s.singulars.first().copied().unwrap_or_else(S::Real::zero);
    let inv: Vec<S> = s
        .singulars
        .iter()
        .map(|&x| if x > rel_tol * top && x > S::Real::zero() { S::from_real(x.recip()) } else { S::zero() })
        .collect();
    Ok(s.right.scale_cols(&inv).mul_adjoint(&s.left))
}

/// `g(H)` for Hermitian `H` through its eigendecomposition.
pub fn hermitian_function<S: Scalar>(h: &Matrix<S>, g: impl Fn(S::Real) -> S::Real) -> Result<Matrix<S>> {
    let (vals, x) = hermitian_eig(h)?;
    let d: Vec<S> = vals.iter().map(|&l| S::from_real(g(l))).collect();
    Ok(x.scale_cols(&d).mul_adjoint(&x))
}
