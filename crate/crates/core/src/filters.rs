//! Scalar filters `f` for block iterations `𝒴′ = f(A)𝒴`: Chebyshev
//! polynomials, the shifted Chebyshev filter, convergence factors and the
//! `Φ` tuples built from filter values.

use num_traits::{Float, One, Zero};

use crate::eigensolvers::Spectrum;
use crate::error::{Error, Result};
use crate::majorization::DescTuple;
use crate::scalar::{Real, Scalar};
use crate::subspaces::{IndexSet, Subspace};

/// Chebyshev polynomial of the first kind `T_l(x)`.
pub fn chebyshev_eval<R: Real>(l: usize, x: R) -> R {
    let one = R::one();
    if x.abs() <= one {
        (R::of(l as f64) * x.acos()).cos()
    } else if x > one {
        (R::of(l as f64) * x.acosh()).cosh()
    } else if l % 2 == 0 {
        chebyshev_eval(l, -x)
    } else {
        -chebyshev_eval(l, -x)
    }
}

/// `T_l(z)` by the three-term recurrence; valid for complex arguments.
pub fn chebyshev_recurrence<S: Scalar>(l: usize, z: S) -> S {
    let (mut prev, mut cur) = (S::one(), z);
    if l == 0 {
        return prev;
    }
    let two = S::from_real(S::Real::of(2.0));
    for _ in 1..l {
        let next = two * z * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Representation of a scalar filter.
#[derive(Clone, Debug, PartialEq)]
pub enum FilterSpec<S: Scalar> {
    /// Coefficients in ascending powers.
    Polynomial { coeffs: Vec<S> },
    /// `T_degree(1 + 2(α − λ_{p+1})/(λ_{p+1} − λ_n))`.
    ShiftedChebyshev { lam_p1: S::Real, lam_n: S::Real, degree: usize },
    /// Explicit values `f(λ)` for each listed eigenvalue.
    EigenvalueTable { entries: Vec<(S, S)> },
}

impl<S: Scalar> FilterSpec<S> {
    pub fn identity() -> Self {
        Self::Polynomial { coeffs: vec![S::zero(), S::one()] }
    }

    pub fn constant(c: S) -> Self {
        Self::Polynomial { coeffs: vec![c] }
    }

    /// Polynomial degree; `None` for tables.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Self::Polynomial { coeffs } => Some(coeffs.len().saturating_sub(1)),
            Self::ShiftedChebyshev { degree, .. } => Some(*degree),
            Self::EigenvalueTable { .. } => None,
        }
    }

    pub fn eval(&self, x: S) -> Result<S> {
        match self {
            Self::Polynomial { coeffs } => Ok(coeffs.iter().rev().fold(S::zero(), |acc, &c| acc * x + c)),
            Self::ShiftedChebyshev { lam_p1, lam_n, degree } => {
                let scale = S::Real::of(2.0) / (*lam_p1 - *lam_n);
                if x.im() == S::Real::zero() {
                    let arg = S::Real::one() + scale * (x.re() - *lam_p1);
                    Ok(S::from_real(chebyshev_eval(*degree, arg)))
                } else {
                    let arg = S::one() + (x - S::from_real(*lam_p1)).scale(scale);
                    Ok(chebyshev_recurrence(*degree, arg))
                }
            }
            Self::EigenvalueTable { entries } => {
                let tol = S::Real::tol(1e-12) * x.modulus().max(S::Real::one());
                entries
                    .iter()
                    .find(|(l, _)| (*l - x).modulus() <= tol)
                    .map(|&(_, v)| v)
                    .ok_or_else(|| Error::FilterUndefined(format!("{x:?}")))
            }
        }
    }

    /// `f(λ₁), …, f(λ_n)`.
    pub fn values_on(&self, spec: &Spectrum<S>) -> Result<Vec<S>> {
        spec.values().iter().map(|&l| self.eval(l)).collect()
    }
}

/// The filter `T_{k−1}(1 + 2(α − λ_{p+1})/(λ_{p+1} − λ_n))`.
pub fn make_shifted_chebyshev<S: Scalar>(lam_p1: S::Real, lam_n: S::Real, k: usize) -> Result<FilterSpec<S>> {
    if !(lam_p1 > lam_n) || !lam_p1.is_finite() || !lam_n.is_finite() {
        return Err(Error::DegenerateInterval(lam_n.to_f64_lossy(), lam_p1.to_f64_lossy()));
    }
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    Ok(FilterSpec::ShiftedChebyshev { lam_p1, lam_n, degree: k - 1 })
}

/// Chebyshev convergence factors for indices `j = 1..=p`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebyFactors<R: Real> {
    /// `σⱼ = 1/T_{k−1}(1 + 2γⱼ)`.
    pub sigma: Vec<R>,
    /// `γⱼ = (λⱼ − λ_{p+1})/(λ_{p+1} − λ_n)`.
    pub gamma: Vec<R>,
    /// `ξⱼ = (λⱼ − λ_{p+1})/(λⱼ − λ_n)`.
    pub xi: Vec<R>,
    /// `βⱼ = σ_{p+1−j}²`, the reflected squared factors.
    pub beta: Vec<R>,
}

/// `1/T_{k−1}(1 + 2γ)`.
pub fn chebyshev_factor<R: Real>(gamma: R, k: usize) -> R {
    chebyshev_eval(k - 1, R::one() + R::of(2.0) * gamma).recip()
}

/// `1/T_{k−1}((1 + ξ)/(1 − ξ))`, the same factor written through `ξ`.
pub fn chebyshev_factor_from_xi<R: Real>(xi: R, k: usize) -> R {
    chebyshev_eval(k - 1, (R::one() + xi) / (R::one() - xi)).recip()
}

pub fn convergence_factors<S: Scalar>(spec: &Spectrum<S>, p: usize, k: usize) -> Result<ChebyFactors<S::Real>> {
    if !spec.is_hermitian() {
        return Err(Error::Invalid("Chebyshev factors need a Hermitian spectrum".into()));
    }
    let lam = spec.real_values();
    if p == 0 || p >= lam.len() {
        return Err(Error::Invalid(format!("p = {p} must lie in 1..{}", lam.len())));
    }
    if !(lam[p - 1] > lam[p]) {
        return Err(Error::GapViolation(format!("λ_{p} = {} is not above λ_{} = {}", lam[p - 1], p + 1, lam[p])));
    }
    convergence_factors_with(&lam[..p], lam[p], lam[lam.len() - 1], k)
}

/// Factors for explicit wanted values `λ₁ ≥ … ≥ λ_p` and interval
/// parameters `λ_{p+1} > λ_n`.
pub fn convergence_factors_with<R: Real>(wanted: &[R], lam_p1: R, lam_n: R, k: usize) -> Result<ChebyFactors<R>> {
    if !(lam_p1 > lam_n) {
        return Err(Error::DegenerateInterval(lam_n.to_f64_lossy(), lam_p1.to_f64_lossy()));
    }
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let gamma: Vec<R> = wanted.iter().map(|&l| (l - lam_p1) / (lam_p1 - lam_n)).collect();
    let xi: Vec<R> = wanted.iter().map(|&l| (l - lam_p1) / (l - lam_n)).collect();
    let sigma: Vec<R> = gamma.iter().map(|&g| chebyshev_factor(g, k)).collect();
    let p = wanted.len();
    let beta = (0..p).map(|j| sigma[p - 1 - j].powi(2)).collect();
    Ok(ChebyFactors { sigma, gamma, xi, beta })
}

/// Filter-value tuples for an index set `τ`.
#[derive(Clone, Debug)]
pub struct FilterTuples<R: Real> {
    /// `[|f(λᵢ)|⁻¹ : i ∈ τ]↓`.
    pub phi_tau: DescTuple<R>,
    /// `[|f(λⱼ)| : j > p]↓`.
    pub phi_hat: DescTuple<R>,
    /// Leading `t = |τ|` entries of `phi_hat`.
    pub phi_hat_t: DescTuple<R>,
    /// Whether `min_{i≤p} |f(λᵢ)| > max_{j>p} |f(λⱼ)|`.
    pub assumption_holds: bool,
}

pub fn filter_tuples<S: Scalar>(spec: &Spectrum<S>, f: &FilterSpec<S>, tau: &IndexSet) -> Result<FilterTuples<S::Real>> {
    let p = spec.p()?;
    tau.check_within(p)?;
    let fv: Vec<S::Real> = f.values_on(spec)?.into_iter().map(|v| v.modulus()).collect();
    filter_tuples_from_moduli(&fv, p, tau)
}

/// As [`filter_tuples`] from precomputed `|f(λ₁)|, …, |f(λ_n)|`.
pub fn filter_tuples_from_moduli<R: Real>(fv: &[R], p: usize, tau: &IndexSet) -> Result<FilterTuples<R>> {
    tau.check_within(p)?;
    if p >= fv.len() {
        return Err(Error::Invalid("no unwanted eigenvalues".into()));
    }
    let mut inv = Vec::with_capacity(tau.len());
    for i in tau.indices() {
        let v = fv[i - 1];
        if v == R::zero() {
            return Err(Error::ZeroFilterValue(*i));
        }
        inv.push(v.recip());
    }
    let phi_hat = DescTuple::new(fv[p..].to_vec())?;
    let phi_hat_t = phi_hat.leading(tau.len().min(phi_hat.len()))?;
    let min_wanted = fv[..p].iter().copied().fold(R::infinity(), R::min);
    Ok(FilterTuples {
        phi_tau: DescTuple::new(inv)?,
        assumption_holds: min_wanted > phi_hat.first(),
        phi_hat,
        phi_hat_t,
    })
}

/// `f(A)Y`, computed spectrally and not orthonormalized.
pub fn apply_filter<S: Scalar>(spec: &Spectrum<S>, f: &FilterSpec<S>, y: &Subspace<S>) -> Result<Subspace<S>> {
    let fv = f.values_on(spec)?;
    Subspace::new(spec.apply_values(&fv, y.basis()))
}
