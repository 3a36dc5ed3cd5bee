//! Shift-and-invert reformulation of a Hermitian definite pencil `(L, S)`.
//!
//! With `L_β = L − βS`, `L̃ = ±L_β` and `M = L_β S⁻¹ L_β`, the pencil
//! eigenvalues `α` map to the eigenvalues `λ = ±(α − β)⁻¹` of the pair
//! `(L̃, M)`, i.e. of the Hermitian matrix `M^{−1/2} L̃ M^{−1/2}`. Eigenvalues
//! closest to `β` on the chosen side become the largest ones.

use num_traits::{Float, Zero};

use super::spectrum::Spectrum;
use crate::error::{Error, Result};
use crate::linalg::{check_hermitian, cholesky, hermitian_function, Lu, Matrix};
use crate::scalar::{Real, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftSign {
    /// `L̃ = L_β`: favours eigenvalues just above the shift.
    Plus,
    /// `L̃ = −L_β`: favours eigenvalues just below the shift.
    Minus,
}

impl ShiftSign {
    fn factor<R: Real>(self) -> R {
        match self {
            Self::Plus => R::one(),
            Self::Minus => -R::one(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Pencil<S: Scalar> {
    pub l: Matrix<S>,
    pub s: Matrix<S>,
    pub beta: S::Real,
    pub sign: ShiftSign,
}

impl<S: Scalar> Pencil<S> {
    /// Checks that `L`, `S` are Hermitian, `S` is positive definite and
    /// `L − βS` is invertible.
    pub fn new(l: Matrix<S>, s: Matrix<S>, beta: S::Real, sign: ShiftSign) -> Result<Self> {
        check_hermitian(&l)?;
        check_hermitian(&s)?;
        if l.shape() != s.shape() {
            return Err(Error::Dimension(format!("L is {:?} but S is {:?}", l.shape(), s.shape())));
        }
        cholesky(&s)?;
        let pencil = Self { l, s, beta, sign };
        Lu::new(&pencil.shifted())?;
        Ok(pencil)
    }

    /// `L_β = L − βS`.
    pub fn shifted(&self) -> Matrix<S> {
        &self.l - &self.s.scaled(S::from_real(self.beta))
    }
}

/// The transformed Hermitian operator and the maps between the two spectra.
pub struct ShiftInvert<S: Scalar> {
    pub spectrum: Spectrum<S>,
    pub operator: Matrix<S>,
    pub beta: S::Real,
    pub sign: ShiftSign,
    shifted_lu: Lu<S>,
    s: Matrix<S>,
}

impl<S: Scalar> ShiftInvert<S> {
    /// `α = β ± 1/λ`.
    pub fn pencil_eigenvalue(&self, lambda: S::Real) -> S::Real {
        self.beta + self.sign.factor::<S::Real>() / lambda
    }

    /// `λ = ±(α − β)⁻¹`.
    pub fn transformed_eigenvalue(&self, alpha: S::Real) -> S::Real {
        self.sign.factor::<S::Real>() / (alpha - self.beta)
    }

    /// Pencil eigenvalues in the order of the transformed spectrum.
    pub fn pencil_eigenvalues(&self) -> Vec<S::Real> {
        self.spectrum.real_values().into_iter().map(|l| self.pencil_eigenvalue(l)).collect()
    }

    /// `M⁻¹ R = L_β⁻¹ S L_β⁻¹ R` through two solves with the shifted matrix.
    pub fn apply_m_inverse(&self, r: &Matrix<S>) -> Matrix<S> {
        let t = self.shifted_lu.solve(r);
        self.shifted_lu.solve(&self.s.matmul(&t))
    }
}

/// Forms `A = M^{−1/2} L̃ M^{−1/2}` densely and diagonalizes it.
pub fn shift_invert_operator<S: Scalar>(pencil: &Pencil<S>) -> Result<ShiftInvert<S>> {
    let lb = pencil.shifted();
    let shifted_lu = Lu::new(&lb)?;
    let s_inv = Lu::new(&pencil.s)?.inverse();
    let m = lb.matmul(&s_inv).matmul(&lb).hermitian_part();
    let m_inv_sqrt = hermitian_function(&m, |x| {
        if x > S::Real::zero() {
            x.sqrt().recip()
        } else {
            S::Real::nan()
        }
    })?;
    m_inv_sqrt.ensure_finite().map_err(|_| Error::NotPositiveDefinite)?;
    let ltilde = lb.scaled(S::from_real(pencil.sign.factor()));
    let operator = m_inv_sqrt.matmul(&ltilde).matmul(&m_inv_sqrt).hermitian_part();
    let spectrum = Spectrum::from_hermitian_matrix(&operator)?;
    Ok(ShiftInvert { spectrum, operator, beta: pencil.beta, sign: pencil.sign, shifted_lu, s: pencil.s.clone() })
}

/// Pencil eigenvalues by reduction to `S^{−1/2} L S^{−1/2}`, descending.
pub fn pencil_eigenvalues_by_reduction<S: Scalar>(l: &Matrix<S>, s: &Matrix<S>) -> Result<Vec<S::Real>> {
    let r = hermitian_function(s, |x| x.sqrt().recip())?;
    crate::linalg::hermitian_eigenvalues(&r.matmul(l).matmul(&r).hermitian_part())
}
