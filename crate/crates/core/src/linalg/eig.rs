//! Cyclic Jacobi eigendecomposition of Hermitian matrices.

use num_traits::{Float, One, Zero};

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

pub const EIG_SWEEP_LIMIT: usize = 60;
const JACOBI_TOL: f64 = 1e-14;
const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues (descending) and a unitary eigenvector matrix of `h`.
///
/// `h` must be Hermitian to `1e-12` relative (Frobenius); it is symmetrized
/// before the sweeps start.
pub fn hermitian_eig<S: Scalar>(h: &Matrix<S>) -> Result<(Vec<S::Real>, Matrix<S>)> {
    let (values, vectors) = jacobi(h, true)?;
    Ok((values, vectors.expect("vectors requested")))
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues<S: Scalar>(h: &Matrix<S>) -> Result<Vec<S::Real>> {
    Ok(jacobi(h, false)?.0)
}

pub fn check_hermitian<S: Scalar>(h: &Matrix<S>) -> Result<()> {
    if !h.is_square() {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", h.rows(), h.cols())));
    }
    h.ensure_finite()?;
    let scale = h.frobenius_norm();
    let asym = (h - &h.adjoint()).frobenius_norm();
    if asym > S::Real::tol(HERMITIAN_TOL) * scale {
        let rel = if scale > S::Real::zero() { (asym / scale).to_f64_lossy() } else { f64::INFINITY };
        return Err(Error::NotHermitian(rel));
    }
    Ok(())
}

fn jacobi<S: Scalar>(h: &Matrix<S>, want_vectors: bool) -> Result<(Vec<S::Real>, Option<Matrix<S>>)> {
    check_hermitian(h)?;
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = want_vectors.then(|| Matrix::identity(n));
    let tol = S::Real::tol(JACOBI_TOL);
    let floor = S::Real::epsilon() * S::Real::of(1e-3) * a.frobenius_norm();
    let two = S::Real::of(2.0);

    let mut converged = n < 2;
    for _ in 0..EIG_SWEEP_LIMIT {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = a[(p, q)];
                let g = hpq.modulus();
                if g == S::Real::zero() {
                    continue;
                }
                let app = a[(p, p)].re();
                let aqq = a[(q, q)].re();
                if g <= tol * (app.abs() * aqq.abs()).sqrt() || g <= floor {
                    continue;
                }
                rotated = true;
                // Rephase index q so that the (p, q) entry becomes real.
                let offdiag = if hpq.im() != S::Real::zero() {
                    let e = hpq.phase().conj();
                    rephase(&mut a, q, e);
                    if let Some(v) = v.as_mut() {
                        for x in v.col_mut(q) {
                            *x *= e;
                        }
                    }
                    g
                } else {
                    hpq.re()
                };
                let theta = (aqq - app) / (two * offdiag);
                let t = if theta == S::Real::zero() {
                    S::Real::one()
                } else {
                    theta.signum() / (theta.abs() + (S::Real::one() + theta * theta).sqrt())
                };
                let c = (S::Real::one() + t * t).sqrt().recip();
                let s = t * c;
                rotate(&mut a, p, q, c, s);
                a[(p, p)] = S::from_real(app - t * offdiag);
                a[(q, q)] = S::from_real(aqq + t * offdiag);
                a[(p, q)] = S::zero();
                a[(q, p)] = S::zero();
                if let Some(v) = v.as_mut() {
                    let (cp, cq) = v.col_pair_mut(p, q);
                    let (cs, ss) = (S::from_real(c), S::from_real(s));
                    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                        let (xp, xq) = (*x, *y);
                        *x = cs * xp - ss * xq;
                        *y = ss * xp + cs * xq;
                    }
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence("cyclic Jacobi eigensolver", EIG_SWEEP_LIMIT));
    }

    let diag: Vec<S::Real> = (0..n).map(|i| a[(i, i)].re()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| diag[y].partial_cmp(&diag[x]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| diag[i]).collect();
    Ok((values, v.map(|v| v.select_columns(&order))))
}

/// `a ← Dᴴ a D` with `D = I` except `D[q,q] = e`, |e| = 1.
fn rephase<S: Scalar>(a: &mut Matrix<S>, q: usize, e: S) {
    let n = a.rows();
    for x in a.col_mut(q) {
        *x *= e;
    }
    let ec = e.conj();
    for j in 0..n {
        a[(q, j)] *= ec;
    }
}

/// `a ← Jᵀ a J` for the real plane rotation acting on indices `p`, `q`.
fn rotate<S: Scalar>(a: &mut Matrix<S>, p: usize, q: usize, c: S::Real, s: S::Real) {
    let n = a.rows();
    let (cs, ss) = (S::from_real(c), S::from_real(s));
    {
        let (cp, cq) = a.col_pair_mut(p, q);
        for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
            let (xp, xq) = (*x, *y);
            *x = cs * xp - ss * xq;
            *y = ss * xp + cs * xq;
        }
    }
    for j in 0..n {
        let xp = a[(p, j)];
        let xq = a[(q, j)];
        a[(p, j)] = cs * xp - ss * xq;
        a[(q, j)] = ss * xp + cs * xq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn diagonal_sorted_descending() {
        let (vals, vecs) = hermitian_eig(&Matrix::<f64>::from_real_diagonal(&[1.0f64, 2.0, 3.0])).unwrap();
        assert_eq!(vals, vec![3.0, 2.0, 1.0]);
        assert!(vecs.orthonormality_residual() < 1e-15);
    }

    #[test]
    fn pauli_x() {
        let h = Matrix::<f64>::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let vals = hermitian_eigenvalues(&h).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_hermitian_residual() {
        let h = Matrix::from_rows(&[
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, -0.5)],
            vec![Complex64::new(1.0, -1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.3, 0.2)],
            vec![Complex64::new(0.0, 0.5), Complex64::new(0.3, -0.2), Complex64::new(0.5, 0.0)],
        ]);
        let (vals, x) = hermitian_eig(&h).unwrap();
        let d: Vec<Complex64> = vals.iter().map(|&l| Complex64::new(l, 0.0)).collect();
        let resid = (&h.matmul(&x) - &x.scale_cols(&d)).frobenius_norm();
        assert!(resid < 1e-13, "residual {resid}");
        assert!(x.orthonormality_residual() < 1e-14);
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        let trace: f64 = vals.iter().sum();
        assert!((trace - 1.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&h), Err(Error::NotHermitian(_))));
    }
}
