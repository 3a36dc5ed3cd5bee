//! Descending tuples and majorization predicates.
//!
//! `b` weakly majorizes `a` (`a ≺_w b`) when every prefix sum of `a↓` is at
//! most the corresponding prefix sum of `b↓`. Strong majorization adds
//! equality of the total sums; the multiplicative variant compares prefix
//! products of nonnegative tuples.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{singular_values, Matrix};
use crate::scalar::{Real, Scalar};

/// Default relative tolerance for majorization verdicts.
pub const DEFAULT_MAJORIZATION_TOL: f64 = 1e-10;

/// Finite reals kept in non-increasing order.
#[derive(Clone, PartialEq)]
pub struct DescTuple<R: Real = f64> {
    values: Vec<R>,
}

impl<R: Real> DescTuple<R> {
    /// Sorts descending (stable for ties). Rejects empty and non-finite input.
    pub fn new(mut values: Vec<R>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyTuple);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite values compare"));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<R> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first(&self) -> R {
        self.values[0]
    }

    pub fn sum(&self) -> R {
        self.values.iter().copied().sum()
    }

    pub fn prefix_sums(&self) -> Vec<R> {
        let mut acc = R::zero();
        self.values
            .iter()
            .map(|&v| {
                acc += v;
                acc
            })
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= R::zero())
    }

    /// First `t` entries.
    pub fn leading(&self, t: usize) -> Result<Self> {
        leading_subtuple(self, t)
    }

    /// Entrywise map followed by re-sorting.
    pub fn map(&self, f: impl Fn(R) -> R) -> Result<Self> {
        Self::new(self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pairs entries by descending rank and re-sorts the result. The shorter
    /// tuple determines the length.
    pub fn zip_with(&self, other: &Self, f: impl Fn(R, R) -> R) -> Result<Self> {
        Self::new(self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn powi(&self, c: i32) -> Result<Self> {
        self.map(|v| v.powi(c))
    }

    pub fn scaled(&self, s: R) -> Result<Self> {
        self.map(|v| v * s)
    }

    pub fn to_f64(&self) -> DescTuple<f64> {
        DescTuple { values: self.values.iter().map(|v| v.to_f64_lossy()).collect() }
    }
}

impl<R: Real> fmt::Debug for DescTuple<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

/// The `a↓` operation.
pub fn sort_desc<R: Real>(a: &[R]) -> Result<DescTuple<R>> {
    DescTuple::new(a.to_vec())
}

pub fn leading_subtuple<R: Real>(a: &DescTuple<R>, t: usize) -> Result<DescTuple<R>> {
    if t == 0 || t > a.len() {
        return Err(Error::IndexOutOfRange(format!("subtuple length {t} of a {}-tuple", a.len())));
    }
    Ok(DescTuple { values: a.values[..t].to_vec() })
}

/// Tolerance for verdicts: `rel` is scaled by the largest prefix magnitude,
/// `abs` is added unscaled.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Self { rel, abs: 0.0 }
    }

    pub fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    fn resolve(&self, magnitudes: impl Iterator<Item = f64>) -> f64 {
        let scale = magnitudes.fold(0.0f64, |m, x| m.max(x.abs()));
        self.rel * scale + self.abs
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::relative(DEFAULT_MAJORIZATION_TOL)
    }
}

/// Outcome of a prefix comparison. For multiplicative majorization the
/// prefix fields hold prefix products.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    pub prefix_sums_lhs: Vec<f64>,
    pub prefix_sums_rhs: Vec<f64>,
    /// Largest `lhs − rhs` over all prefixes, clamped at 0.
    pub worst_violation: f64,
    pub tolerance_used: f64,
}

impl MajorizationVerdict {
    /// Smallest `rhs − lhs` over the prefixes (negative when violated).
    pub fn min_slack(&self) -> f64 {
        self.prefix_sums_lhs
            .iter()
            .zip(&self.prefix_sums_rhs)
            .map(|(l, r)| r - l)
            .fold(f64::INFINITY, f64::min)
    }

    /// Verdict from explicit prefix values.
    pub fn from_prefixes(lhs: Vec<f64>, rhs: Vec<f64>, tol: Tolerance) -> Self {
        let tolerance_used = tol.resolve(lhs.iter().chain(&rhs).copied());
        let worst_violation = lhs.iter().zip(&rhs).map(|(l, r)| (l - r).max(0.0)).fold(0.0, f64::max);
        Self {
            holds: worst_violation <= tolerance_used,
            prefix_sums_lhs: lhs,
            prefix_sums_rhs: rhs,
            worst_violation,
            tolerance_used,
        }
    }

    /// Entrywise `lhs[j] ≤ rhs[j]`, each entry with its own tolerance
    /// `rel·max(|lhs[j]|, |rhs[j]|) + abs`. A NaN entry never holds.
    pub fn from_pairs(lhs: Vec<f64>, rhs: Vec<f64>, tol: Tolerance) -> Self {
        let mut holds = true;
        let mut worst_violation = 0.0f64;
        let mut tolerance_used = tol.abs;
        let mut worst_excess = f64::NEG_INFINITY;
        for (&l, &r) in lhs.iter().zip(&rhs) {
            let allowed = tol.rel * l.abs().max(r.abs()) + tol.abs;
            let excess = l - r - allowed;
            if !(l - r <= allowed) {
                holds = false;
            }
            if excess > worst_excess || excess.is_nan() {
                worst_excess = excess;
                tolerance_used = allowed;
            }
            worst_violation = worst_violation.max(l - r);
        }
        if lhs.iter().chain(&rhs).any(|v| v.is_nan()) {
            worst_violation = f64::NAN;
        }
        Self { holds, prefix_sums_lhs: lhs, prefix_sums_rhs: rhs, worst_violation, tolerance_used }
    }

    /// Conjunction: holds when both hold; keeps the prefixes of `self`.
    pub fn and(mut self, other: &MajorizationVerdict) -> Self {
        self.holds &= other.holds;
        self.worst_violation = self.worst_violation.max(other.worst_violation);
        self
    }
}

/// Both tuples as f64 vectors of equal length, zero padded when allowed.
fn padded<R: Real>(b: &DescTuple<R>, a: &DescTuple<R>) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut bv: Vec<f64> = b.values.iter().map(|v| v.to_f64_lossy()).collect();
    let mut av: Vec<f64> = a.values.iter().map(|v| v.to_f64_lossy()).collect();
    if bv.len() != av.len() {
        if !(a.is_nonnegative() && b.is_nonnegative()) {
            return Err(Error::LengthMismatch(b.len(), a.len()));
        }
        let d = bv.len().max(av.len());
        bv.resize(d, 0.0);
        av.resize(d, 0.0);
    }
    Ok((bv, av))
}

fn prefix(v: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    v.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

/// `a ≺_w b` with a relative tolerance.
pub fn weakly_majorizes<R: Real>(b: &DescTuple<R>, a: &DescTuple<R>, tol: f64) -> Result<MajorizationVerdict> {
    weakly_majorizes_with(b, a, Tolerance::relative(tol))
}

pub fn weakly_majorizes_with<R: Real>(b: &DescTuple<R>, a: &DescTuple<R>, tol: Tolerance) -> Result<MajorizationVerdict> {
    let (bv, av) = padded(b, a)?;
    Ok(MajorizationVerdict::from_prefixes(prefix(&av), prefix(&bv), tol))
}

/// `a ≺ b`: weak majorization plus equal totals.
pub fn strongly_majorizes<R: Real>(b: &DescTuple<R>, a: &DescTuple<R>, tol: f64) -> Result<MajorizationVerdict> {
    let mut v = weakly_majorizes(b, a, tol)?;
    let gap = (v.prefix_sums_lhs.last().unwrap() - v.prefix_sums_rhs.last().unwrap()).abs();
    v.worst_violation = v.worst_violation.max(gap);
    v.holds = v.worst_violation <= v.tolerance_used;
    Ok(v)
}

/// Multiplicative weak majorization of nonnegative tuples:
/// `Π_{i≤k} a↓ᵢ ≤ (1 + rel_tol)·Π_{i≤k} b↓ᵢ` for every `k`.
pub fn log_weakly_majorizes<R: Real>(b: &DescTuple<R>, a: &DescTuple<R>, rel_tol: f64) -> Result<MajorizationVerdict> {
    for t in [a, b] {
        if let Some(&neg) = t.values.iter().find(|&&v| v < R::zero()) {
            return Err(Error::NegativeEntry(neg.to_f64_lossy()));
        }
    }
    let (bv, av) = padded(b, a)?;
    let running = |v: &[f64]| {
        let mut acc = 1.0;
        v.iter()
            .map(|x| {
                acc *= x;
                acc
            })
            .collect::<Vec<f64>>()
    };
    let lhs = running(&av);
    let rhs = running(&bv);
    let mut worst = 0.0f64;
    let mut holds = true;
    for (&l, &r) in lhs.iter().zip(&rhs) {
        if l == 0.0 {
            // Every later prefix product of `a` is zero as well.
            break;
        }
        worst = worst.max(l - r);
        if l > (1.0 + rel_tol) * r {
            holds = false;
        }
    }
    let scale = rhs.iter().chain(&lhs).fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(MajorizationVerdict {
        holds,
        prefix_sums_lhs: lhs,
        prefix_sums_rhs: rhs,
        worst_violation: worst,
        tolerance_used: rel_tol * scale,
    })
}

/// `S_t(B)^c`: the `t` largest singular values raised to the power `c`.
fn leading_singulars_pow<S: Scalar>(b: &Matrix<S>, t: usize, c: i32) -> Result<DescTuple<f64>> {
    let sv: Vec<f64> = singular_values(b)?.iter().take(t).map(|s| s.to_f64_lossy().powi(c)).collect();
    DescTuple::new(sv)
}

/// Both singular-value product inequalities for a conformable triple:
/// `S_tᶜ(B₁B₂B₃) ≺_w S_tᶜ(B₁)S_tᶜ(B₂)S_tᶜ(B₃)` and
/// `S_tᶜ(B₁B₂B₃)/S_tᶜ(B₂) ≺_w S_tᶜ(B₁)S_tᶜ(B₃)`.
pub fn product_majorization_check<S: Scalar>(
    b1: &Matrix<S>,
    b2: &Matrix<S>,
    b3: &Matrix<S>,
    t: usize,
    c: i32,
    tol: f64,
) -> Result<(MajorizationVerdict, MajorizationVerdict)> {
    if b1.cols() != b2.rows() || b2.cols() != b3.rows() {
        return Err(Error::Dimension(format!(
            "product of {:?}, {:?} and {:?} is not defined",
            b1.shape(),
            b2.shape(),
            b3.shape()
        )));
    }
    let limit = [b1.rows(), b1.cols(), b2.cols(), b3.cols()].into_iter().min().unwrap();
    if t == 0 || t > limit {
        return Err(Error::IndexOutOfRange(format!("t = {t} exceeds {limit}")));
    }
    let prod = leading_singulars_pow(&b1.matmul(b2).matmul(b3), t, c)?;
    let s1 = leading_singulars_pow(b1, t, c)?;
    let s2 = leading_singulars_pow(b2, t, c)?;
    let s3 = leading_singulars_pow(b3, t, c)?;
    let product_form = weakly_majorizes(&s1.mul(&s2)?.mul(&s3)?, &prod, tol)?;
    if s2.values().iter().any(|&v| v <= 0.0) {
        return Err(Error::Singular);
    }
    let quotient = prod.zip_with(&s2, |a, b| a / b)?;
    let quotient_form = weakly_majorizes(&s1.mul(&s3)?, &quotient, tol)?;
    Ok((product_form, quotient_form))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[f64]) -> DescTuple {
        sort_desc(v).unwrap()
    }

    #[test]
    fn sorting() {
        assert_eq!(t(&[1.0, 3.0, 2.0]).values(), &[3.0, 2.0, 1.0]);
        assert_eq!(t(&[5.0]).values(), &[5.0]);
        assert_eq!(t(&[2.0, 2.0, 2.0]).values(), &[2.0, 2.0, 2.0]);
        assert_eq!(sort_desc::<f64>(&[]).unwrap_err(), Error::EmptyTuple);
        assert_eq!(sort_desc(&[1.0, f64::NAN]).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn weak_majorization_examples() {
        let v = weakly_majorizes(&t(&[3.0, 1.0]), &t(&[2.0, 2.0]), 1e-10).unwrap();
        assert!(v.holds);
        assert_eq!(v.prefix_sums_lhs, vec![2.0, 4.0]);
        assert_eq!(v.prefix_sums_rhs, vec![3.0, 4.0]);

        let v = weakly_majorizes(&t(&[2.0, 2.0]), &t(&[3.0, 1.0]), 1e-10).unwrap();
        assert!(!v.holds);
        assert_eq!(v.worst_violation, 1.0);

        let v = weakly_majorizes(&t(&[1.0, 1.0, 1.0]), &t(&[1.0, 1.0]), 1e-10).unwrap();
        assert!(v.holds);
        assert_eq!(v.prefix_sums_lhs.len(), 3);

        let err = weakly_majorizes(&t(&[1.0, -1.0, 1.0]), &t(&[1.0, 1.0]), 1e-10).unwrap_err();
        assert_eq!(err, Error::LengthMismatch(3, 2));
    }

    #[test]
    fn strong_majorization_examples() {
        assert!(strongly_majorizes(&t(&[3.0, 1.0]), &t(&[2.0, 2.0]), 1e-10).unwrap().holds);
        assert!(weakly_majorizes(&t(&[3.0, 2.0]), &t(&[2.0, 2.0]), 1e-10).unwrap().holds);
        assert!(!strongly_majorizes(&t(&[3.0, 2.0]), &t(&[2.0, 2.0]), 1e-10).unwrap().holds);
        let a = t(&[0.3, -1.2, 4.0]);
        assert!(strongly_majorizes(&a, &a, 0.0).unwrap().holds);
    }

    #[test]
    fn log_majorization_examples() {
        assert!(log_weakly_majorizes(&t(&[4.0, 1.0]), &t(&[2.0, 2.0]), 1e-10).unwrap().holds);
        assert!(!log_weakly_majorizes(&t(&[2.0, 2.0]), &t(&[4.0, 1.0]), 1e-10).unwrap().holds);
        // The last prefix product of `a` is zero, so only the first two prefixes count.
        assert!(log_weakly_majorizes(&t(&[3.0, 2.0, 1.0]), &t(&[3.0, 2.0, 0.0]), 0.0).unwrap().holds);
        assert_eq!(
            log_weakly_majorizes(&t(&[1.0]), &t(&[-1.0]), 0.0).unwrap_err(),
            Error::NegativeEntry(-1.0)
        );
    }

    #[test]
    fn subtuples() {
        let a = t(&[5.0, 4.0, 3.0]);
        assert_eq!(leading_subtuple(&a, 2).unwrap().values(), &[5.0, 4.0]);
        assert_eq!(leading_subtuple(&a, 3).unwrap(), a);
        assert_eq!(leading_subtuple(&t(&[5.0]), 1).unwrap().values(), &[5.0]);
        assert!(leading_subtuple(&a, 0).is_err());
        assert!(leading_subtuple(&a, 4).is_err());
    }

    #[test]
    fn product_check_trivial_cases() {
        let b1 = Matrix::<f64>::from_real_diagonal(&[2.0, 1.0]);
        let id = Matrix::<f64>::identity(2);
        let (p, q) = product_majorization_check(&b1, &id, &id, 2, 1, 1e-10).unwrap();
        assert!(p.holds && q.holds);
        assert_eq!(p.prefix_sums_lhs, vec![2.0, 3.0]);
        assert_eq!(p.min_slack(), 0.0);

        let b2 = Matrix::<f64>::from_rows(&[vec![0.3, -1.0], vec![2.0, 0.7]]);
        let (p, q) = product_majorization_check(&id, &b2, &id, 2, 2, 1e-10).unwrap();
        assert!(p.holds && q.holds);
        assert!(p.worst_violation <= 1e-14);
    }

    #[test]
    fn product_check_rejects_bad_shapes() {
        let a = Matrix::<f64>::identity(2);
        let b = Matrix::<f64>::identity(3);
        assert!(matches!(product_majorization_check(&a, &b, &b, 1, 1, 1e-10), Err(Error::Dimension(_))));
        assert!(matches!(product_majorization_check(&a, &a, &a, 3, 1, 1e-10), Err(Error::IndexOutOfRange(_))));
        let z = Matrix::<f64>::zeros(2, 2);
        assert_eq!(product_majorization_check(&a, &z, &a, 1, 1, 1e-10).unwrap_err(), Error::Singular);
    }
}
