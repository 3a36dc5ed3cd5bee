//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Columns of a working copy are rotated pairwise until mutually orthogonal;
//! the column norms are then the singular values. Small singular values are
//! obtained to high relative accuracy, which matters wherever they are inverted.

use num_traits::{Float, One, Zero};

use super::matrix::{dot, norm, Matrix};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

pub const SVD_SWEEP_LIMIT: usize = 60;
const JACOBI_TOL: f64 = 1e-14;

/// Thin SVD `M = left · diag(singulars) · adjoint(right)`.
#[derive(Clone, Debug)]
pub struct SvdResult<S: Scalar> {
    pub left: Matrix<S>,
    /// Non-increasing, non-negative.
    pub singulars: Vec<S::Real>,
    pub right: Matrix<S>,
}

impl<S: Scalar> SvdResult<S> {
    pub fn reconstruct(&self) -> Matrix<S> {
        let d: Vec<S> = self.singulars.iter().map(|&s| S::from_real(s)).collect();
        self.left.scale_cols(&d).mul_adjoint(&self.right)
    }

    pub fn rank(&self, rel_tol: S::Real) -> usize {
        let Some(&top) = self.singulars.first() else { return 0 };
        self.singulars.iter().filter(|&&s| s > rel_tol * top && s > S::Real::zero()).count()
    }
}

pub fn svd<S: Scalar>(m: &Matrix<S>) -> Result<SvdResult<S>> {
    m.ensure_finite()?;
    if m.rows() < m.cols() {
        let t = jacobi(&m.adjoint(), true)?;
        return Ok(SvdResult { left: t.right, singulars: t.singulars, right: t.left });
    }
    jacobi(m, true)
}

/// Singular values only, non-increasing.
pub fn singular_values<S: Scalar>(m: &Matrix<S>) -> Result<Vec<S::Real>> {
    m.ensure_finite()?;
    if m.rows() < m.cols() {
        return Ok(jacobi(&m.adjoint(), false)?.singulars);
    }
    Ok(jacobi(m, false)?.singulars)
}

/// Spectral norm.
pub fn two_norm<S: Scalar>(m: &Matrix<S>) -> Result<S::Real> {
    Ok(singular_values(m)?.first().copied().unwrap_or_else(S::Real::zero))
}

fn jacobi<S: Scalar>(m: &Matrix<S>, want_vectors: bool) -> Result<SvdResult<S>> {
    let cols = m.cols();
    let rows = m.rows();
    let tol = S::Real::tol(JACOBI_TOL);
    let mut w = m.clone();
    let mut v = if want_vectors { Matrix::identity(cols) } else { Matrix::zeros(0, 0) };
    let mut sq: Vec<S::Real> = (0..cols).map(|j| w.col(j).iter().map(|x| x.modulus_sqr()).sum()).collect();

    let mut converged = cols < 2;
    for _ in 0..SVD_SWEEP_LIMIT {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha = sq[p];
                let beta = sq[q];
                if alpha == S::Real::zero() || beta == S::Real::zero() {
                    continue;
                }
                let gamma = dot(w.col(p), w.col(q));
                let g = gamma.modulus();
                if g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Make the inner product real and positive by rephasing column q.
                let e = gamma.phase().conj();
                let zeta = (beta - alpha) / (S::Real::of(2.0) * g);
                let t = zeta.signum() / (zeta.abs() + (S::Real::one() + zeta * zeta).sqrt());
                let t = if zeta == S::Real::zero() { S::Real::one() } else { t };
                let c = (S::Real::one() + t * t).sqrt().recip();
                let s = c * t;
                rotate(&mut w, p, q, e, c, s);
                if want_vectors {
                    rotate(&mut v, p, q, e, c, s);
                }
                sq[p] = w.col(p).iter().map(|x| x.modulus_sqr()).sum();
                sq[q] = w.col(q).iter().map(|x| x.modulus_sqr()).sum();
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence("one-sided Jacobi SVD", SVD_SWEEP_LIMIT));
    }

    let norms: Vec<S::Real> = (0..cols).map(|j| norm(w.col(j))).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap_or(std::cmp::Ordering::Equal));
    let singulars: Vec<S::Real> = order.iter().map(|&j| norms[j]).collect();

    if !want_vectors {
        return Ok(SvdResult { left: Matrix::zeros(0, 0), singulars, right: Matrix::zeros(0, 0) });
    }

    let tiny = S::Real::min_positive_value() * S::Real::of(1e4);
    let mut left = Matrix::zeros(rows, cols);
    let mut pending = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        if norms[j] > tiny {
            let inv = S::from_real(norms[j].recip());
            for (dst, &src) in left.col_mut(k).iter_mut().zip(w.col(j)) {
                *dst = src * inv;
            }
        } else {
            pending.push(k);
        }
    }
    complete_orthonormal(&mut left, &pending);
    let right = v.select_columns(&order);
    Ok(SvdResult { left, singulars, right })
}

/// Rephases column `q` by `e`, then applies the real rotation
/// `[p, q] ← [c·p − s·q, s·p + c·q]`.
fn rotate<S: Scalar>(m: &mut Matrix<S>, p: usize, q: usize, e: S, c: S::Real, s: S::Real) {
    let (cp, cq) = m.col_pair_mut(p, q);
    let cs = S::from_real(c);
    let ss = S::from_real(s);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let a = *x;
        let b = *y * e;
        *x = cs * a - ss * b;
        *y = ss * a + cs * b;
    }
}

/// Fills the listed columns with unit vectors orthogonal to all other columns.
pub(crate) fn complete_orthonormal<S: Scalar>(m: &mut Matrix<S>, pending: &[usize]) {
    if pending.is_empty() {
        return;
    }
    let rows = m.rows();
    let mut filled: Vec<usize> = (0..m.cols()).filter(|j| !pending.contains(j)).collect();
    let mut candidate = 0;
    for &k in pending {
        loop {
            assert!(candidate < rows, "cannot complete orthonormal set");
            let mut e = vec![S::zero(); rows];
            e[candidate] = S::one();
            candidate += 1;
            for _ in 0..2 {
                for &j in &filled {
                    let proj = dot(m.col(j), &e);
                    for (ei, &qi) in e.iter_mut().zip(m.col(j)) {
                        *ei -= proj * qi;
                    }
                }
            }
            let nrm = norm(&e);
            if nrm > S::Real::of(0.5) {
                let inv = S::from_real(nrm.recip());
                for (dst, src) in m.col_mut(k).iter_mut().zip(e) {
                    *dst = src * inv;
                }
                filled.push(k);
                break;
            }
        }
    }
}
