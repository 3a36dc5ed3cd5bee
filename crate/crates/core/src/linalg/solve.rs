//! Dense direct solvers: LU with partial pivoting and Cholesky.

use num_traits::{Float, Zero};

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// `P·A = L·U` with unit lower-triangular `L`.
pub struct Lu<S: Scalar> {
    lu: Matrix<S>,
    perm: Vec<usize>,
}

impl<S: Scalar> Lu<S> {
    /// Fails with [`Error::Singular`] when a pivot falls below `1e-12·max|A|`.
    pub fn new(a: &Matrix<S>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension("LU needs a square matrix".into()));
        }
        a.ensure_finite()?;
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let threshold = S::Real::tol(1e-12) * a.max_abs();
        for k in 0..n {
            let (piv, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].modulus()))
                .fold((k, S::Real::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= threshold || pmax == S::Real::zero() {
                return Err(Error::Singular);
            }
            if piv != k {
                perm.swap(piv, k);
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(piv, j)];
                    lu[(piv, j)] = t;
                }
            }
            let inv = S::one() / lu[(k, k)];
            for i in (k + 1)..n {
                lu[(i, k)] *= inv;
            }
            for j in (k + 1)..n {
                let ukj = lu[(k, j)];
                if ukj == S::zero() {
                    continue;
                }
                for i in (k + 1)..n {
                    let lik = lu[(i, k)];
                    lu[(i, j)] -= lik * ukj;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve(&self, b: &Matrix<S>) -> Matrix<S> {
        let n = self.lu.rows();
        assert_eq!(b.rows(), n);
        let mut x = b.select_rows(&self.perm);
        for c in 0..x.cols() {
            let col = x.col_mut(c);
            for i in 0..n {
                let mut s = col[i];
                for k in 0..i {
                    s -= self.lu[(i, k)] * col[k];
                }
                col[i] = s;
            }
            for i in (0..n).rev() {
                let mut s = col[i];
                for k in (i + 1)..n {
                    s -= self.lu[(i, k)] * col[k];
                }
                col[i] = s / self.lu[(i, i)];
            }
        }
        x
    }

    pub fn inverse(&self) -> Matrix<S> {
        self.solve(&Matrix::identity(self.lu.rows()))
    }
}

pub fn inverse<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    Ok(Lu::new(a)?.inverse())
}

/// Lower-triangular `L` with `L·Lᴴ = a`; fails unless `a` is Hermitian positive definite.
pub fn cholesky<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    super::eig::check_hermitian(a)?;
    let n = a.rows();
    let mut l = Matrix::<S>::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re();
        for k in 0..j {
            d -= l[(j, k)].modulus_sqr();
        }
        if !(d > S::Real::zero()) {
            return Err(Error::NotPositiveDefinite);
        }
        let djj = d.sqrt();
        l[(j, j)] = S::from_real(djj);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s.scale(djj.recip());
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn lu_solves() {
        let a = Matrix::from_rows(&[vec![0.0, 2.0, 1.0], vec![1.0, 1.0, 0.0], vec![3.0, 0.0, 1.0]]);
        let inv = inverse(&a).unwrap();
        assert!((&a.matmul(&inv) - &Matrix::identity(3)).frobenius_norm() < 1e-14);
        let s = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(Lu::new(&s), Err(Error::Singular)));
    }

    #[test]
    fn cholesky_factor() {
        let a = Matrix::from_rows(&[
            vec![Complex64::new(4.0, 0.0), Complex64::new(1.0, 1.0)],
            vec![Complex64::new(1.0, -1.0), Complex64::new(3.0, 0.0)],
        ]);
        let l = cholesky(&a).unwrap();
        assert!((&l.mul_adjoint(&l) - &a).frobenius_norm() < 1e-14);
        let indefinite = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert_eq!(cholesky(&indefinite).unwrap_err(), Error::NotPositiveDefinite);
    }
}
