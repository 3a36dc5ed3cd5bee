//! Householder QR and the orthonormalization helpers built on it.

use num_traits::Zero;

use super::matrix::{axpy, dot, norm, Matrix};
use super::svd::singular_values;
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Compact Householder factorization of an `m × n` matrix with `m ≥ n`.
pub struct HouseholderQr<S: Scalar> {
    /// Reflector vectors, each of full length `m` with zeros above its pivot row.
    reflectors: Vec<(Vec<S>, S::Real)>,
    r: Matrix<S>,
    rows: usize,
}

impl<S: Scalar> HouseholderQr<S> {
    pub fn new(m: &Matrix<S>) -> Self {
        let (rows, cols) = m.shape();
        let steps = cols.min(rows);
        let mut a = m.clone();
        let mut reflectors = Vec::with_capacity(steps);
        for k in 0..steps {
            let x = &a.col(k)[k..];
            let xnorm = norm(x);
            let mut v = vec![S::zero(); rows];
            if xnorm == S::Real::zero() {
                reflectors.push((v, S::Real::zero()));
                continue;
            }
            let alpha = -(x[0].phase().scale(xnorm));
            v[k..].copy_from_slice(x);
            v[k] -= alpha;
            let vnorm2: S::Real = v[k..].iter().map(|z| z.modulus_sqr()).sum();
            let beta = if vnorm2 == S::Real::zero() { S::Real::zero() } else { S::Real::of(2.0) / vnorm2 };
            for j in k..cols {
                let col = a.col_mut(j);
                let proj = dot(&v[k..], &col[k..]).scale(beta);
                axpy(-proj, &v[k..], &mut col[k..]);
            }
            reflectors.push((v, beta));
        }
        let r = Matrix::from_fn(steps, cols, |i, j| if i <= j { a[(i, j)] } else { S::zero() });
        Self { reflectors, r, rows }
    }

    /// Upper-triangular factor (`min(m,n) × n`).
    pub fn r(&self) -> &Matrix<S> {
        &self.r
    }

    /// Applies `Q` to the columns of `b` in place.
    fn apply_q(&self, b: &mut Matrix<S>) {
        for (v, beta) in self.reflectors.iter().rev() {
            if *beta == S::Real::zero() {
                continue;
            }
            for j in 0..b.cols() {
                let col = b.col_mut(j);
                let proj = dot(v, col).scale(*beta);
                axpy(-proj, v, col);
            }
        }
    }

    /// First `count` columns of the unitary factor.
    pub fn q_columns(&self, count: usize) -> Matrix<S> {
        assert!(count <= self.rows);
        let mut q = Matrix::from_fn(self.rows, count, |i, j| if i == j { S::one() } else { S::zero() });
        self.apply_q(&mut q);
        q
    }

    pub fn thin_q(&self) -> Matrix<S> {
        self.q_columns(self.reflectors.len())
    }
}

/// Orthonormal basis of `range(m)` for a full-column-rank `m`.
///
/// Fails with [`Error::RankDeficient`] when the smallest singular value is at
/// or below `1e-12` times the largest.
pub fn orthonormalize<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    orthonormalize_with(m, S::Real::tol(1e-12))
}

pub fn orthonormalize_with<S: Scalar>(m: &Matrix<S>, rel_tol: S::Real) -> Result<Matrix<S>> {
    m.ensure_finite()?;
    let threshold = rel_tol.to_f64_lossy();
    if m.cols() == 0 || m.rows() < m.cols() {
        return Err(Error::RankDeficient { ratio: 0.0, threshold });
    }
    let qr = HouseholderQr::new(m);
    let sv = singular_values(qr.r())?;
    let largest = sv[0];
    let smallest = *sv.last().unwrap();
    if largest == S::Real::zero() || smallest <= rel_tol * largest {
        let ratio = if largest == S::Real::zero() { 0.0 } else { (smallest / largest).to_f64_lossy() };
        return Err(Error::RankDeficient { ratio, threshold });
    }
    Ok(qr.thin_q())
}

/// Orthonormal basis of the orthogonal complement of `range(v)`.
pub fn orthonormal_complement<S: Scalar>(v: &Matrix<S>) -> Result<Matrix<S>> {
    let n = v.rows();
    let t = v.cols();
    if t > n {
        return Err(Error::Dimension(format!("{t} columns in dimension {n}")));
    }
    let q = orthonormalize(v)?;
    let qr = HouseholderQr::new(&q);
    let full = qr.q_columns(n);
    Ok(full.select_columns(&(t..n).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn qr_reconstructs() {
        let m = Matrix::from_fn(5, 3, |i, j| Complex64::new((i + 2 * j) as f64 % 3.0 + 0.5, (i * j) as f64 * 0.1));
        let qr = HouseholderQr::new(&m);
        let q = qr.thin_q();
        assert!(q.orthonormality_residual() < 1e-13);
        let back = q.matmul(qr.r());
        assert!((&back - &m).frobenius_norm() < 1e-12);
    }

    #[test]
    fn identity_is_kept() {
        let q = orthonormalize(&Matrix::<f64>::identity(4)).unwrap();
        // Householder may flip signs; the span and orthonormality are what matter.
        for i in 0..4 {
            assert!((q[(i, i)].abs() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn single_column_normalized() {
        let q = orthonormalize(&Matrix::<f64>::column_vector(&[3.0, 4.0])).unwrap();
        assert!((q[(0, 0)].abs() - 0.6).abs() < 1e-15);
        assert!((q[(1, 0)].abs() - 0.8).abs() < 1e-15);
        assert!(q[(0, 0)] * q[(1, 0)] > 0.0);
    }

    #[test]
    fn rank_deficiency_reported() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]]);
        match orthonormalize(&m) {
            Err(Error::RankDeficient { ratio, threshold }) => {
                assert!(ratio < 1e-12);
                assert_eq!(threshold, 1e-12);
            }
            other => panic!("expected rank deficiency, got {other:?}"),
        }
    }

    #[test]
    fn complement_is_orthogonal() {
        let v = Matrix::from_fn(6, 2, |i, j| ((i + 1) * (j + 2)) as f64 + if i == j { 1.0 } else { 0.0 });
        let c = orthonormal_complement(&v).unwrap();
        assert_eq!(c.shape(), (6, 4));
        assert!(c.orthonormality_residual() < 1e-13);
        assert!(v.adjoint_mul(&c).frobenius_norm() < 1e-12);
    }
}
