use num_traits::{Float, One};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, Matrix};
use crate::scalar::{Real, Scalar};
use crate::subspaces::Subspace;

const UNITARY_TOL: f64 = 1e-12;

/// Anything that can multiply a block of vectors.
pub trait LinearOperator<S: Scalar> {
    fn dim(&self) -> usize;
    fn apply(&self, y: &Matrix<S>) -> Matrix<S>;
}

impl<S: Scalar> LinearOperator<S> for Matrix<S> {
    fn dim(&self) -> usize {
        self.rows()
    }

    fn apply(&self, y: &Matrix<S>) -> Matrix<S> {
        self.matmul(y)
    }
}

#[derive(Clone, Debug)]
pub enum Eigenbasis<S: Scalar> {
    /// The standard basis of dimension `n`; the operator is diagonal.
    Standard(usize),
    Dense(Matrix<S>),
}

/// A normal operator `A = X diag(λ) Xᴴ` given by its eigendecomposition.
///
/// Hermitian spectra keep real eigenvalues in non-increasing order. Normal
/// spectra keep the caller's order, which fixes which eigenvalues count as
/// wanted (`1..=p`).
#[derive(Clone, Debug)]
pub struct Spectrum<S: Scalar> {
    values: Vec<S>,
    basis: Eigenbasis<S>,
    hermitian: bool,
    p: Option<usize>,
}

impl<S: Scalar> Spectrum<S> {
    /// Diagonal Hermitian operator; `values` must be non-increasing.
    pub fn diagonal(values: Vec<S::Real>) -> Result<Self> {
        check_real_values(&values)?;
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("eigenvalues must be non-increasing".into()));
        }
        let n = values.len();
        Ok(Self {
            values: values.into_iter().map(S::from_real).collect(),
            basis: Eigenbasis::Standard(n),
            hermitian: true,
            p: None,
        })
    }

    /// Hermitian operator from real eigenvalues and a unitary eigenvector
    /// matrix; pairs are re-sorted by descending eigenvalue.
    pub fn hermitian(values: Vec<S::Real>, vectors: Matrix<S>) -> Result<Self> {
        check_real_values(&values)?;
        check_unitary(&vectors, values.len())?;
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
        Ok(Self {
            values: order.iter().map(|&i| S::from_real(values[i])).collect(),
            basis: Eigenbasis::Dense(vectors.select_columns(&order)),
            hermitian: true,
            p: None,
        })
    }

    pub fn from_hermitian_matrix(h: &Matrix<S>) -> Result<Self> {
        let (values, vectors) = hermitian_eig(h)?;
        Ok(Self { values: values.into_iter().map(S::from_real).collect(), basis: Eigenbasis::Dense(vectors), hermitian: true, p: None })
    }

    /// Normal operator from arbitrary eigenvalues and a unitary eigenvector matrix.
    pub fn normal(values: Vec<S>, vectors: Matrix<S>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        check_unitary(&vectors, values.len())?;
        Ok(Self { values, basis: Eigenbasis::Dense(vectors), hermitian: false, p: None })
    }

    /// Fixes the number of wanted eigenvalues. Hermitian spectra need
    /// `λ_p > λ_{p+1}`; normal spectra need the wanted and unwanted
    /// eigenvalue sets to be disjoint.
    pub fn with_p(mut self, p: usize) -> Result<Self> {
        let n = self.n();
        if p == 0 || p >= n {
            return Err(Error::Invalid(format!("block size p = {p} must lie in 1..{n}")));
        }
        if self.hermitian {
            let (a, b) = (self.values[p - 1].re(), self.values[p].re());
            if !(a > b) {
                return Err(Error::GapViolation(format!("λ_{p} = {a} is not above λ_{} = {b}", p + 1)));
            }
        } else {
            let tiny = S::Real::epsilon() * S::Real::of(16.0);
            for (i, &a) in self.values[..p].iter().enumerate() {
                if let Some(j) = self.values[p..].iter().position(|&b| (a - b).modulus() <= tiny * a.modulus().max(S::Real::one())) {
                    return Err(Error::GapViolation(format!("eigenvalue {} coincides with eigenvalue {}", i + 1, p + j + 1)));
                }
            }
        }
        self.p = Some(p);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn p(&self) -> Result<usize> {
        self.p.ok_or_else(|| Error::Invalid("block size p is not set".into()))
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// Real parts of the eigenvalues (the eigenvalues for Hermitian spectra).
    pub fn real_values(&self) -> Vec<S::Real> {
        self.values.iter().map(|v| v.re()).collect()
    }

    /// 1-based access to the real eigenvalue `λᵢ`.
    pub fn lambda(&self, i: usize) -> S::Real {
        self.values[i - 1].re()
    }

    pub fn lambda_max(&self) -> S::Real {
        self.values[0].re()
    }

    pub fn lambda_min(&self) -> S::Real {
        self.values[self.n() - 1].re()
    }

    pub fn eigenbasis(&self) -> &Eigenbasis<S> {
        &self.basis
    }

    /// Eigenvectors for the 0-based indices `idx`.
    pub fn eigenvectors(&self, idx: &[usize]) -> Matrix<S> {
        match &self.basis {
            Eigenbasis::Standard(n) => Matrix::from_fn(*n, idx.len(), |i, j| if i == idx[j] { S::one() } else { S::zero() }),
            Eigenbasis::Dense(x) => x.select_columns(idx),
        }
    }

    /// `span{x_i : i ∈ idx}` for 0-based indices.
    pub fn invariant_subspace(&self, idx: &[usize]) -> Subspace<S> {
        Subspace::from_orthonormal_unchecked(self.eigenvectors(idx))
    }

    /// 𝒳 = span{x₁, …, x_p}.
    pub fn wanted_subspace(&self) -> Result<Subspace<S>> {
        let p = self.p()?;
        Ok(self.invariant_subspace(&(0..p).collect::<Vec<_>>()))
    }

    /// `X diag(d) Xᴴ Y`.
    pub fn apply_values(&self, d: &[S], y: &Matrix<S>) -> Matrix<S> {
        assert_eq!(d.len(), self.n());
        match &self.basis {
            Eigenbasis::Standard(_) => y.scale_rows(d),
            Eigenbasis::Dense(x) => x.matmul(&x.adjoint_mul(y).scale_rows(d)),
        }
    }

    /// `g(A) Y`.
    pub fn apply_fn(&self, g: impl Fn(S) -> S, y: &Matrix<S>) -> Matrix<S> {
        let d: Vec<S> = self.values.iter().map(|&l| g(l)).collect();
        self.apply_values(&d, y)
    }

    pub fn to_matrix(&self) -> Matrix<S> {
        self.apply_values(&self.values, &Matrix::identity(self.n()))
    }

    /// `VᴴAV`.
    pub fn compress(&self, v: &Matrix<S>) -> Matrix<S> {
        v.adjoint_mul(&self.apply(v))
    }
}

impl<S: Scalar> LinearOperator<S> for Spectrum<S> {
    fn dim(&self) -> usize {
        self.n()
    }

    fn apply(&self, y: &Matrix<S>) -> Matrix<S> {
        self.apply_values(&self.values, y)
    }
}

fn check_real_values<R: Real>(values: &[R]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Invalid("empty spectrum".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn check_unitary<S: Scalar>(x: &Matrix<S>, n: usize) -> Result<()> {
    if x.shape() != (n, n) {
        return Err(Error::Dimension(format!("eigenvector matrix {:?} for {n} eigenvalues", x.shape())));
    }
    let r = x.orthonormality_residual();
    if r > S::Real::tol(UNITARY_TOL) * S::Real::of(n as f64).sqrt() {
        return Err(Error::NotOrthonormal(r.to_f64_lossy()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SampleRng;
    use num_complex::Complex64;

    #[test]
    fn diagonal_application() {
        let s = Spectrum::<f64>::diagonal(vec![2.0, 1.0, 0.5]).unwrap();
        let y = Matrix::column_vector(&[1.0, 1.0, 1.0]);
        assert_eq!(s.apply(&y).col(0), &[2.0, 1.0, 0.5]);
        assert!(Spectrum::<f64>::diagonal(vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn gap_is_enforced() {
        let s = Spectrum::<f64>::diagonal(vec![2.0, 1.0, 1.0]).unwrap();
        assert!(s.clone().with_p(1).is_ok());
        assert!(matches!(s.with_p(2), Err(Error::GapViolation(_))));
    }

    #[test]
    fn dense_hermitian_roundtrip() {
        let mut rng = SampleRng::for_stream(3, 0);
        let x = rng.unitary::<Complex64>(6);
        let s = Spectrum::hermitian(vec![0.5, 3.0, -1.0, 2.0, 0.0, 1.0], x).unwrap();
        assert_eq!(s.real_values(), vec![3.0, 2.0, 1.0, 0.5, 0.0, -1.0]);
        let a = s.to_matrix();
        let back = Spectrum::from_hermitian_matrix(&a).unwrap();
        for (u, v) in back.real_values().iter().zip(s.real_values()) {
            assert!((u - v).abs() < 1e-12);
        }
        let x1 = s.eigenvectors(&[0]);
        let r = (&a.matmul(&x1) - &x1.scaled(Complex64::new(3.0, 0.0))).frobenius_norm();
        assert!(r < 1e-12);
    }

    #[test]
    fn normal_spectrum_disjointness() {
        let mut rng = SampleRng::for_stream(3, 1);
        let x = rng.unitary::<Complex64>(3);
        let vals = vec![Complex64::new(0.0, 2.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)];
        let s = Spectrum::normal(vals, x).unwrap();
        assert!(s.clone().with_p(1).is_err());
        assert!(s.with_p(2).is_err());
    }
}
