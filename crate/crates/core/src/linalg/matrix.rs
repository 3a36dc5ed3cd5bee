use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Dense matrix with column-major storage.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from entries listed row by row.
    pub fn from_row_major(rows: usize, cols: usize, entries: &[S]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self::from_fn(rows, cols, |i, j| entries[i * cols + j]))
    }

    /// Builds a matrix from nested rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn from_columns(columns: &[Vec<S>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        assert!(columns.iter().all(|col| col.len() == r), "ragged columns");
        let data = columns.iter().flat_map(|col| col.iter().copied()).collect();
        Self { rows: r, cols: c, data }
    }

    pub fn column_vector(v: &[S]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn from_diagonal(d: &[S]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn from_real_diagonal(d: &[S::Real]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = S::from_real(x);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[S] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [S] {
        let r = self.rows;
        &mut self.data[j * r..(j + 1) * r]
    }

    /// Mutable access to two distinct columns.
    pub fn col_pair_mut(&mut self, a: usize, b: usize) -> (&mut [S], &mut [S]) {
        assert!(a != b);
        let r = self.rows;
        if a < b {
            let (lo, hi) = self.data.split_at_mut(b * r);
            (&mut lo[a * r..(a + 1) * r], &mut hi[..r])
        } else {
            let (lo, hi) = self.data.split_at_mut(a * r);
            (&mut hi[..r], &mut lo[b * r..(b + 1) * r])
        }
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        (0..self.cols).map(|j| self[(i, j)]).collect()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn scaled(&self, s: S) -> Self {
        self.map(|x| x * s)
    }

    /// `self · rhs`.
    pub fn matmul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matmul: inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let target = out.col_mut(j);
            for k in 0..self.cols {
                let b = rhs[(k, j)];
                if b == S::zero() {
                    continue;
                }
                axpy(b, self.col(k), target);
            }
        }
        out
    }

    /// `adjoint(self) · rhs` without forming the adjoint.
    pub fn adjoint_mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.rows, rhs.rows, "adjoint_mul: row counts differ");
        Matrix::from_fn(self.cols, rhs.cols, |i, j| dot(self.col(i), rhs.col(j)))
    }

    /// `self · adjoint(rhs)`.
    pub fn mul_adjoint(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.cols, "mul_adjoint: column counts differ");
        let mut out = Matrix::zeros(self.rows, rhs.rows);
        for k in 0..self.cols {
            let a = self.col(k);
            for j in 0..rhs.rows {
                let b = rhs[(j, k)].conj();
                if b == S::zero() {
                    continue;
                }
                axpy(b, a, out.col_mut(j));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![S::zero(); self.rows];
        for (k, &b) in v.iter().enumerate() {
            axpy(b, self.col(k), &mut out);
        }
        out
    }

    /// Multiplies row `i` by `d[i]`, i.e. `diag(d) · self`.
    pub fn scale_rows(&self, d: &[S]) -> Self {
        assert_eq!(d.len(), self.rows);
        Self::from_fn(self.rows, self.cols, |i, j| d[i] * self[(i, j)])
    }

    /// Multiplies column `j` by `d[j]`, i.e. `self · diag(d)`.
    pub fn scale_cols(&self, d: &[S]) -> Self {
        assert_eq!(d.len(), self.cols);
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * d[j])
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let r = self.rows;
        let mut data = Vec::with_capacity(r * idx.len());
        for &j in idx {
            data.extend_from_slice(self.col(j));
        }
        Self { rows: r, cols: idx.len(), data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)])
    }

    /// Leading `count` columns.
    pub fn leading_columns(&self, count: usize) -> Self {
        assert!(count <= self.cols);
        Self { rows: self.rows, cols: count, data: self.data[..count * self.rows].to_vec() }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Horizontal concatenation `[self, other]`.
    pub fn hstack(&self, other: &Matrix<S>) -> Self {
        assert_eq!(self.rows, other.rows, "hstack: row counts differ");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { rows: self.rows, cols: self.cols + other.cols, data }
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &Matrix<S>) -> Self {
        assert_eq!(self.cols, other.cols, "vstack: column counts differ");
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)]
            } else {
                other[(i - self.rows, j)]
            }
        })
    }

    pub fn push_column(&mut self, v: &[S]) {
        assert_eq!(v.len(), self.rows);
        self.data.extend_from_slice(v);
        self.cols += 1;
    }

    pub fn frobenius_norm(&self) -> S::Real {
        norm(&self.data)
    }

    pub fn max_abs(&self) -> S::Real {
        self.data.iter().fold(S::Real::zero(), |m, x| m.max(x.modulus()))
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> S {
        self.diagonal().into_iter().sum()
    }

    /// `(self + adjoint(self)) / 2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        let half = S::Real::of(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()).scale(half))
    }

    /// `‖adjoint(self)·self − I‖_F`.
    pub fn orthonormality_residual(&self) -> S::Real {
        let g = self.adjoint_mul(self);
        (&g - &Matrix::identity(self.cols)).frobenius_norm()
    }

    pub fn to_complex(&self) -> Matrix<num_complex::Complex<S::Real>>
    where
        num_complex::Complex<S::Real>: Scalar<Real = S::Real>,
    {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            let x = self[(i, j)];
            num_complex::Complex::new(x.re(), x.im())
        })
    }
}

impl<S: Scalar> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl<S: Scalar> IndexMut<(usize, usize)> for Matrix<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

impl<'a, S: Scalar> Add<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<'a, S: Scalar> Sub<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<'a, S: Scalar> Mul<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                write!(f, " {:?}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `adjoint(a) · b`.
#[inline]
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (&x, &y) in a.iter().zip(b) {
        acc += x.conj() * y;
    }
    acc
}

/// `y += alpha · x`.
#[inline]
pub fn axpy<S: Scalar>(alpha: S, x: &[S], y: &mut [S]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Euclidean norm with scaling against overflow.
pub fn norm<S: Scalar>(v: &[S]) -> S::Real {
    let scale = v.iter().fold(S::Real::zero(), |m, x| m.max(x.modulus()));
    if scale == S::Real::zero() || !scale.is_finite() {
        return scale;
    }
    let inv = scale.recip();
    let sum: S::Real = v.iter().map(|x| (x.modulus() * inv).powi(2)).sum();
    scale * sum.sqrt()
}

pub fn scale_in_place<S: Scalar>(v: &mut [S], s: S) {
    for x in v.iter_mut() {
        *x *= s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn adjoint_is_involution() {
        let m = Matrix::from_fn(3, 2, |i, j| Complex64::new(i as f64, j as f64 + 0.5));
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn products_agree() {
        let a = Matrix::from_fn(4, 3, |i, j| Complex64::new((i * 3 + j) as f64, (i as f64) - 1.0));
        let b = Matrix::from_fn(4, 2, |i, j| Complex64::new(j as f64 - (i as f64), 0.25));
        let lhs = a.adjoint_mul(&b);
        let rhs = a.adjoint().matmul(&b);
        assert!((&lhs - &rhs).frobenius_norm() < 1e-12);
        let c = Matrix::from_fn(5, 3, |i, j| Complex64::new(i as f64 * 0.5, j as f64));
        let lhs = a.mul_adjoint(&c);
        let rhs = a.matmul(&c.adjoint());
        assert!((&lhs - &rhs).frobenius_norm() < 1e-12);
    }

    #[test]
    fn row_major_layout() {
        let m = Matrix::from_row_major(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(m[(0, 2)], 3.0);
        assert_eq!(m[(1, 0)], 4.0);
        assert!(Matrix::<f64>::from_row_major(2, 2, &[1.0]).is_err());
    }

    #[test]
    fn norm_handles_large_entries() {
        let v = [3.0e200f64, 4.0e200];
        assert!((norm(&v) / 5.0e200 - 1.0).abs() < 1e-15);
    }
}
