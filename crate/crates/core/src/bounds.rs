//! Evaluators for single-angle and majorization-type convergence bounds of
//! block filters `𝒴′ = f(A)𝒴` and of the block Lanczos method.
//!
//! Every evaluator computes the measured quantity from the actual iterate and
//! the bound from the filter or Chebyshev factors, and returns both sides in a
//! [`BoundReport`]. Reports carry the intermediate right-hand side built from
//! the biorthogonal auxiliary basis `y₁, …, y_p` when the bound has one.
//!
//! Notation: `𝒳 = span{x₁, …, x_p}` is the wanted invariant subspace, `Ỹ` an
//! orthonormal basis of the start subspace and `Y = Ỹ(XᴴỸ)⁻¹`, so that
//! `xᵢᴴyⱼ = δᵢⱼ`. Ritz-error ratios are `εⱼ = (λⱼ − ηⱼ)/(ηⱼ − λ_n)`.

use std::cell::RefCell;

use serde::Serialize;

use crate::eigensolvers::{block_power, ritz_values, BlockKrylov, LinearOperator, Spectrum};
use crate::error::{Error, Result};
use crate::filters::{apply_filter, convergence_factors_with, filter_tuples_from_moduli, make_shifted_chebyshev, FilterSpec};
use crate::linalg::{hermitian_eigenvalues, inverse, singular_values, svd, Matrix};
use crate::majorization::{MajorizationVerdict, Tolerance};
use crate::scalar::{Real, Scalar};
use crate::subspaces::{biorthogonal_basis, principal_tangents, IndexSet, Subspace};

/// Relative tolerance of report verdicts.
pub const BOUND_REL_TOL: f64 = 1e-8;
/// Absolute noise floor of report verdicts.
pub const BOUND_ABS_TOL: f64 = 1e-13;
/// Ratio denominators below this fraction of `λ₁ − λ_n` make the ratio `+∞`.
pub const DENOMINATOR_FLOOR: f64 = 1e-14;

/// How the measured side is compared with the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    /// `measured[j] ≤ bound[j]` for every listed index.
    Componentwise,
    /// Prefix sums in the listed order.
    PrefixSums,
    /// `measured ≺_w bound`: prefix sums of both tuples sorted descending.
    WeakMajorization,
}

/// Both sides of one bound.
///
/// Componentwise and prefix-sum reports list entries in index order;
/// majorization reports list them descending. Measured entries equal to
/// `+∞` come from vanishing denominators and are excluded from the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub comparison: Comparison,
    pub measured: Vec<f64>,
    /// Right-hand side without auxiliary subspaces.
    pub bound: Vec<f64>,
    /// Intermediate right-hand side through the biorthogonal basis, when the
    /// bound has one. The verdict also checks `bound_aux` against `bound`.
    pub bound_aux: Option<Vec<f64>>,
    pub excluded: usize,
    /// Whether the filter separates wanted from unwanted eigenvalues.
    pub applicable: bool,
    pub verdict: MajorizationVerdict,
    pub tolerance: Tolerance,
    pub metadata: Vec<(String, Vec<f64>)>,
}

impl BoundReport {
    fn new(
        name: &'static str,
        comparison: Comparison,
        measured: Vec<f64>,
        bound_aux: Option<Vec<f64>>,
        bound: Vec<f64>,
        tolerance: Tolerance,
    ) -> Self {
        let excluded = measured.iter().filter(|v| **v == f64::INFINITY).count();
        let mut report = Self {
            name,
            comparison,
            measured,
            bound,
            bound_aux,
            excluded,
            applicable: true,
            verdict: MajorizationVerdict::from_pairs(vec![], vec![], tolerance),
            tolerance,
            metadata: Vec::new(),
        };
        report.verdict = verify_report(&report, tolerance);
        report
    }

    fn with_meta(mut self, key: &str, values: Vec<f64>) -> Self {
        self.metadata.push((key.to_string(), values));
        self
    }

    fn applicable(mut self, yes: bool) -> Self {
        self.applicable = yes;
        self
    }

    /// Holds, or does not apply.
    pub fn is_satisfied(&self) -> bool {
        !self.applicable || self.verdict.holds
    }

    pub fn measured_sum(&self) -> f64 {
        self.measured.iter().filter(|v| v.is_finite()).sum()
    }

    pub fn bound_sum(&self) -> f64 {
        self.bound.iter().sum()
    }

    pub fn bound_aux_sum(&self) -> Option<f64> {
        self.bound_aux.as_ref().map(|b| b.iter().sum())
    }
}

/// Default verdict tolerance for the precision `R`.
pub fn default_tolerance<R: Real>() -> Tolerance {
    Tolerance::new(R::tol(BOUND_REL_TOL).to_f64_lossy(), R::tol(BOUND_ABS_TOL).to_f64_lossy())
}

/// Re-runs the comparisons of a report with a caller-chosen tolerance: the
/// measured side against the tightest right-hand side, and the auxiliary
/// right-hand side against the final one.
pub fn verify_report(report: &BoundReport, tol: Tolerance) -> MajorizationVerdict {
    let first = report.bound_aux.as_ref().unwrap_or(&report.bound);
    let verdict = compare(&report.measured, first, report.comparison, tol);
    match &report.bound_aux {
        Some(aux) => {
            let chain = match report.comparison {
                Comparison::Componentwise => Comparison::Componentwise,
                _ => Comparison::WeakMajorization,
            };
            verdict.and(&compare(aux, &report.bound, chain, tol))
        }
        None => verdict,
    }
}

fn compare(lhs: &[f64], rhs: &[f64], how: Comparison, tol: Tolerance) -> MajorizationVerdict {
    match how {
        Comparison::Componentwise => {
            let (l, r): (Vec<f64>, Vec<f64>) =
                lhs.iter().zip(rhs).filter(|(l, _)| **l != f64::INFINITY).map(|(l, r)| (*l, *r)).unzip();
            MajorizationVerdict::from_pairs(l, r, tol)
        }
        Comparison::PrefixSums => MajorizationVerdict::from_pairs(running_sum(lhs), running_sum(rhs), tol),
        Comparison::WeakMajorization => {
            let mut l: Vec<f64> = lhs.iter().copied().filter(|v| *v != f64::INFINITY).collect();
            let mut r = rhs.to_vec();
            let d = l.len().max(r.len());
            l.resize(d, 0.0);
            r.resize(d, 0.0);
            MajorizationVerdict::from_pairs(running_sum(&desc(l)), running_sum(&desc(r)), tol)
        }
    }
}

fn running_sum(v: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    v.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

fn desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Entrywise product of tuples sorted descending; shorter ones are padded
/// with zeros.
fn times(a: &[f64], b: &[f64]) -> Vec<f64> {
    let d = a.len().max(b.len());
    let (mut a, mut b) = (desc(a.to_vec()), desc(b.to_vec()));
    a.resize(d, 0.0);
    b.resize(d, 0.0);
    a.iter().zip(&b).map(|(x, y)| x * y).collect()
}

fn squares(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| x * x).collect()
}

fn to_f64<R: Real>(v: &[R]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64_lossy()).collect()
}

/// `tan Θ(𝒰, 𝒱)`, descending.
fn tangents<S: Scalar>(u: &Subspace<S>, v: &Subspace<S>) -> Result<Vec<f64>> {
    Ok(to_f64(principal_tangents(u, v)?.values()))
}

fn largest_tangent<S: Scalar>(u: &Subspace<S>, v: &Subspace<S>) -> Result<f64> {
    Ok(tangents(u, v)?[0])
}

fn require_hermitian<S: Scalar>(spec: &Spectrum<S>) -> Result<()> {
    if spec.is_hermitian() {
        Ok(())
    } else {
        Err(Error::Invalid("this bound needs a Hermitian operator".into()))
    }
}

/// `(λⱼ − ηⱼ)/(ηⱼ − lower)` for `j < count`; `+∞` when the denominator
/// falls below the floor.
fn ritz_ratios(lam: &[f64], ritz: &[f64], count: usize, lower: f64, floor: f64) -> Vec<f64> {
    (0..count)
        .map(|j| {
            let d = ritz[j] - lower;
            if d < floor {
                f64::INFINITY
            } else {
                (lam[j] - ritz[j]) / d
            }
        })
        .collect()
}

/// Start data shared by the evaluators.
struct Start<S: Scalar> {
    p: usize,
    lam: Vec<f64>,
    x: Subspace<S>,
    ytilde: Subspace<S>,
    /// Biorthogonal basis `Y = [y₁, …, y_p]`.
    ybi: Matrix<S>,
    /// `tan Θ(𝒳, 𝒴)`, descending.
    tan_xy: Vec<f64>,
}

impl<S: Scalar> Start<S> {
    fn new(spec: &Spectrum<S>, y: &Subspace<S>) -> Result<Self> {
        let p = spec.p()?;
        if y.dim() != p || y.ambient_dim() != spec.n() {
            return Err(Error::Dimension(format!(
                "start subspace has dimension {} in {}, expected {p} in {}",
                y.dim(),
                y.ambient_dim(),
                spec.n()
            )));
        }
        let x = spec.wanted_subspace()?;
        let ytilde = y.orthonormalized()?;
        let ybi = biorthogonal_basis(&x, &ytilde)?;
        let tan_xy = tangents(&x, &ytilde)?;
        Ok(Self { p, lam: to_f64(&spec.real_values()), x, ytilde, ybi, tan_xy })
    }

    fn lam_n(&self) -> f64 {
        self.lam[self.lam.len() - 1]
    }

    fn floor(&self) -> f64 {
        DENOMINATOR_FLOOR * (self.lam[0] - self.lam_n())
    }

    /// `span{x_i : i ∈ idx}` for 0-based `idx`.
    fn x_sel(&self, spec: &Spectrum<S>, idx: &[usize]) -> Subspace<S> {
        spec.invariant_subspace(idx)
    }

    /// `span{y_i : i ∈ idx}` for 0-based `idx`.
    fn y_sel(&self, idx: &[usize]) -> Result<Subspace<S>> {
        Subspace::new(self.ybi.select_columns(idx))
    }

    /// `f(A) span{y_i : i ∈ idx}`.
    fn fy_sel(&self, spec: &Spectrum<S>, fv: &[S], idx: &[usize]) -> Result<Subspace<S>> {
        Subspace::new(spec.apply_values(fv, &self.ybi.select_columns(idx)))
    }

    /// The Ritz-error ratios `ε₁, …, ε_count` of `A` in `range(q)`.
    fn ritz_errors(&self, spec: &Spectrum<S>, q: &Subspace<S>, count: usize) -> Result<Vec<f64>> {
        let eta = to_f64(&ritz_values(spec, q.orthonormalized()?.basis())?);
        Ok(ritz_ratios(&self.lam, &eta, count, self.lam_n(), self.floor()))
    }
}

/// `|f(λ₁)|, …, |f(λ_n)|` and whether `min_{i≤p}|f(λᵢ)| > max_{j>p}|f(λⱼ)|`.
fn filter_moduli<S: Scalar>(spec: &Spectrum<S>, f: &FilterSpec<S>, p: usize) -> Result<(Vec<S>, Vec<f64>, bool)> {
    let fv = f.values_on(spec)?;
    let m: Vec<f64> = fv.iter().map(|v| v.modulus().to_f64_lossy()).collect();
    let top_unwanted = m[p..].iter().copied().fold(0.0, f64::max);
    let separated = m[..p].iter().all(|&v| v > top_unwanted);
    Ok((fv, m, separated))
}

/// `max_{j>p}|f(λⱼ)| / min_{j≤i}|f(λⱼ)|` for `i = 1..=p`.
fn cumulative_factors(m: &[f64], p: usize) -> Result<Vec<f64>> {
    let top_unwanted = m[p..].iter().copied().fold(0.0, f64::max);
    let mut low = f64::INFINITY;
    let mut out = Vec::with_capacity(p);
    for (i, &v) in m[..p].iter().enumerate() {
        if v == 0.0 {
            return Err(Error::ZeroFilterValue(i + 1));
        }
        low = low.min(v);
        out.push(top_unwanted / low);
    }
    Ok(out)
}

/// `[Φ_τ Φ̂_t]` as an f64 tuple, descending.
fn phi_product(m: &[f64], p: usize, tau: &IndexSet) -> Result<(Vec<f64>, bool)> {
    let ft = filter_tuples_from_moduli(m, p, tau)?;
    Ok((times(ft.phi_tau.values(), ft.phi_hat_t.values()), ft.assumption_holds))
}

fn cheby_filter<S: Scalar>(spec: &Spectrum<S>, p: usize, k: usize) -> Result<(FilterSpec<S>, Vec<f64>)> {
    require_hermitian(spec)?;
    let lam = spec.real_values();
    let lam_n = lam[lam.len() - 1];
    let f = make_shifted_chebyshev(lam[p], lam_n, k)?;
    let cf = convergence_factors_with(&lam[..p], lam[p], lam_n, k)?;
    Ok((f, to_f64(&cf.sigma)))
}

/// `tan∠(xᵢ, 𝒴⁽ℓ⁾) ≤ (max_{j>p}|λⱼ| / |λᵢ|)^ℓ tan∠(𝒳, 𝒴⁽⁰⁾)` for the block
/// power iterate `𝒴⁽ℓ⁾ = A^ℓ 𝒴⁽⁰⁾`, with the intermediate `tan∠(xᵢ, yᵢ)`.
pub fn bound_power_tangent<S: Scalar>(spec: &Spectrum<S>, y0: &Subspace<S>, steps: usize) -> Result<BoundReport> {
    let st = Start::new(spec, y0)?;
    let p = st.p;
    let moduli: Vec<f64> = spec.values().iter().map(|v| v.modulus().to_f64_lossy()).collect();
    let top_unwanted = moduli[p..].iter().copied().fold(0.0, f64::max);
    if let Some(i) = moduli[..p].iter().position(|&v| v <= top_unwanted) {
        return Err(Error::GapViolation(format!("|λ_{}| = {} does not exceed max_(j>p) |λ_j| = {top_unwanted}", i + 1, moduli[i])));
    }
    let yl = block_power(spec, &st.ytilde, steps)?;
    let sigma: Vec<f64> = moduli[..p].iter().map(|&m| (top_unwanted / m).powi(steps as i32)).collect();
    single_angle_report("power_tangent", spec, &st, &yl, &sigma).map(|r| r.with_meta("sigma", sigma))
}

fn single_angle_report<S: Scalar>(
    name: &'static str,
    spec: &Spectrum<S>,
    st: &Start<S>,
    iterate: &Subspace<S>,
    sigma: &[f64],
) -> Result<BoundReport> {
    let mut measured = Vec::with_capacity(st.p);
    let mut aux = Vec::with_capacity(st.p);
    for i in 0..st.p {
        let xi = st.x_sel(spec, &[i]);
        measured.push(largest_tangent(&xi, iterate)?);
        aux.push(sigma[i] * largest_tangent(&xi, &st.y_sel(&[i])?)?);
    }
    let bound = sigma.iter().map(|s| s * st.tan_xy[0]).collect();
    Ok(BoundReport::new(name, Comparison::Componentwise, measured, Some(aux), bound, default_tolerance::<S::Real>()))
}

/// `tan∠(xᵢ, f(A)𝒴) ≤ σᵢ tan∠(xᵢ, yᵢ) ≤ σᵢ tan∠(𝒳, 𝒴)` with
/// `σᵢ = max_{j>p}|f(λⱼ)| / |f(λᵢ)|`.
pub fn bound_filtered_tangent<S: Scalar>(spec: &Spectrum<S>, f: &FilterSpec<S>, y: &Subspace<S>) -> Result<BoundReport> {
    let st = Start::new(spec, y)?;
    let (_, m, separated) = filter_moduli(spec, f, st.p)?;
    let top_unwanted = m[st.p..].iter().copied().fold(0.0, f64::max);
    let mut sigma = Vec::with_capacity(st.p);
    for (i, &v) in m[..st.p].iter().enumerate() {
        if v == 0.0 {
            return Err(Error::ZeroFilterValue(i + 1));
        }
        sigma.push(top_unwanted / v);
    }
    let fy = apply_filter(spec, f, &st.ytilde)?;
    Ok(single_angle_report("filtered_tangent", spec, &st, &fy, &sigma)?.with_meta("sigma", sigma).applicable(separated))
}

/// The filtered tangent bound for the shifted Chebyshev filter of degree
/// `k − 1`: `σᵢ = 1/T_{k−1}(1 + 2γᵢ)`.
pub fn bound_chebyshev_tangent<S: Scalar>(spec: &Spectrum<S>, y: &Subspace<S>, k: usize) -> Result<BoundReport> {
    let st = Start::new(spec, y)?;
    let (f, sigma) = cheby_filter(spec, st.p, k)?;
    let fy = apply_filter(spec, &f, &st.ytilde)?;
    Ok(single_angle_report("chebyshev_tangent", spec, &st, &fy, &sigma)?.with_meta("sigma", sigma))
}

/// `tan∠(𝒳ᵢ, f(A)𝒴ᵢ) ≤ max_{j>p}|f(λⱼ)| / min_{j≤i}|f(λⱼ)| · tan∠(𝒳ᵢ, 𝒴ᵢ)`
/// for `i = 1..=p`, with `𝒴ᵢ = span{y₁, …, yᵢ}`.
pub fn bound_aux_subspace_tangent<S: Scalar>(spec: &Spectrum<S>, f: &FilterSpec<S>, y: &Subspace<S>) -> Result<BoundReport> {
    let st = Start::new(spec, y)?;
    let (fv, m, separated) = filter_moduli(spec, f, st.p)?;
    let factors = cumulative_factors(&m, st.p)?;
    let mut measured = Vec::with_capacity(st.p);
    let mut bound = Vec::with_capacity(st.p);
    for i in 1..=st.p {
        let idx: Vec<usize> = (0..i).collect();
        let xi = st.x_sel(spec, &idx);
        measured.push(largest_tangent(&xi, &st.fy_sel(spec, &fv, &idx)?)?);
        bound.push(factors[i - 1] * largest_tangent(&xi, &st.y_sel(&idx)?)?);
    }
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("aux_subspace_tangent", Comparison::Componentwise, measured, None, bound, tol)
        .with_meta("factor", factors)
        .applicable(separated))
}

/// `εᵢ ≤ tan²∠(𝒳ᵢ, f(A)𝒴ᵢ)` for the Ritz values `η′` of `A` in `f(A)𝒴`.
pub fn bound_ritz_by_aux_angle<S: Scalar>(spec: &Spectrum<S>, f: &FilterSpec<S>, y: &Subspace<S>) -> Result<BoundReport> {
    require_hermitian(spec)?;
    let st = Start::new(spec, y)?;
    let (fv, _, separated) = filter_moduli(spec, f, st.p)?;
    let fy = apply_filter(spec, f, &st.ytilde)?;
    let measured = st.ritz_errors(spec, &fy, st.p)?;
    let mut bound = Vec::with_capacity(st.p);
    for i in 1..=st.p {
        let idx: Vec<usize> = (0..i).collect();
        bound.push(largest_tangent(&st.x_sel(spec, &idx), &st.fy_sel(spec, &fv, &idx)?)?.powi(2));
    }
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("ritz_by_aux_angle", Comparison::Componentwise, measured, None, bound, tol).applicable(separated))
}

/// `εᵢ ≤ φᵢ² tan²∠(𝒳ᵢ, 𝒴ᵢ) ≤ φᵢ² tan²∠(𝒳, 𝒴)` with
/// `φᵢ = max_{j>p}|f(λⱼ)| / min_{j≤i}|f(λⱼ)|`.
pub fn bound_filtered_ritz<S: Scalar>(spec: &Spectrum<S>, f: &FilterSpec<S>, y: &Subspace<S>) -> Result<BoundReport> {
    require_hermitian(spec)?;
    let st = Start::new(spec, y)?;
    let (_, m, separated) = filter_moduli(spec, f, st.p)?;
    let factors = cumulative_factors(&m, st.p)?;
    let fy = apply_filter(spec, f, &st.ytilde)?;
    Ok(scalar_ritz_report("filtered_ritz", spec, &st, &fy, &factors)?.with_meta("factor", factors).applicable(separated))
}

fn scalar_ritz_report<S: Scalar>(
    name: &'static str,
    spec: &Spectrum<S>,
    st: &Start<S>,
    iterate: &Subspace<S>,
    factors: &[f64],
) -> Result<BoundReport> {
    let measured = st.ritz_errors(spec, iterate, st.p)?;
    let mut aux = Vec::with_capacity(st.p);
    for i in 1..=st.p {
        let idx: Vec<usize> = (0..i).collect();
        aux.push((factors[i - 1] * largest_tangent(&st.x_sel(spec, &idx), &st.y_sel(&idx)?)?).powi(2));
    }
    let bound = factors.iter().map(|s| (s * st.tan_xy[0]).powi(2)).collect();
    Ok(BoundReport::new(name, Comparison::Componentwise, measured, Some(aux), bound, default_tolerance::<S::Real>()))
}

/// `εᵢ ≤ σᵢ² tan²∠(𝒳ᵢ, 𝒴ᵢ) ≤ σᵢ² tan²∠(𝒳, 𝒴)` for the shifted Chebyshev
/// filter of degree `k − 1`.
pub fn bound_chebyshev_ritz<S: Scalar>(spec: &Spectrum<S>, y: &Subspace<S>, k: usize) -> Result<BoundReport> {
    let st = Start::new(spec, y)?;
    let (f, sigma) = cheby_filter(spec, st.p, k)?;
    let fy = apply_filter(spec, &f, &st.ytilde)?;
    Ok(scalar_ritz_report("chebyshev_ritz", spec, &st, &fy, &sigma)?.with_meta("sigma", sigma))
}

/// `Σ_{j≤d} εⱼ↓ ≤ Σ_{j≤d} βⱼ tan²θⱼ(𝒳, 𝒴)` with `βⱼ = σ_{p+1−j}²`, for the
/// shifted Chebyshev filter. The intermediate side is `tan²Θ(𝒳, f(A)𝒴)`.
pub fn bound_stationary_major<S: Scalar>(spec: &Spectrum<S>, y: &Subspace<S>, k: usize) -> Result<BoundReport> {
    let st = Start::new(spec, y)?;
    let (f, sigma) = cheby_filter(spec, st.p, k)?;
    let fy = apply_filter(spec, &f, &st.ytilde)?;
    let measured = desc(st.ritz_errors(spec, &fy, st.p)?);
    let aux = squares(&tangents(&st.x, &fy)?);
    let beta: Vec<f64> = sigma.iter().rev().map(|s| s * s).collect();
    let bound = times(&beta, &squares(&st.tan_xy));
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("stationary_major", Comparison::WeakMajorization, measured, Some(aux), bound, tol).with_meta("beta", beta))
}

/// `tan Θ(𝒳_τ, f(A)𝒴) ≺_w Φ_τ Φ̂_t tan Θ(𝒳_τ, 𝒴_τ) ≤ Φ_τ Φ̂_t tan Θ_t(𝒳, 𝒴)`.
pub fn bound_multiangle_major<S: Scalar>(
    spec: &Spectrum<S>,
    f: &FilterSpec<S>,
    tau: &IndexSet,
    y: &Subspace<S>,
) -> Result<BoundReport> {
    let st = Start::new(spec, y)?;
    tau.check_within(st.p)?;
    let (_, m, _) = filter_moduli(spec, f, st.p)?;
    let (phi, separated) = phi_product(&m, st.p, tau)?;
    let idx = tau.zero_based();
    let xt = st.x_sel(spec, &idx);
    let fy = apply_filter(spec, f, &st.ytilde)?;
    let measured = tangents(&xt, &fy)?;
    let aux = times(&phi, &tangents(&xt, &st.y_sel(&idx)?)?);
    let bound = times(&phi, &st.tan_xy[..tau.len()]);
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("multiangle_major", Comparison::WeakMajorization, measured, Some(aux), bound, tol)
        .with_meta("phi", phi)
        .applicable(separated))
}

/// `tan²Θ(𝒳ᵢ, f(A)𝒴ᵢ) ≺_w Φᵢ² Φ̂ᵢ² tan²Θ(𝒳ᵢ, 𝒴ᵢ)`.
pub fn bound_aux_subspace_major<S: Scalar>(
    spec: &Spectrum<S>,
    f: &FilterSpec<S>,
    i: usize,
    y: &Subspace<S>,
) -> Result<BoundReport> {
    let st = Start::new(spec, y)?;
    let lead = IndexSet::leading(i)?;
    lead.check_within(st.p)?;
    let (fv, m, _) = filter_moduli(spec, f, st.p)?;
    let (phi, separated) = phi_product(&m, st.p, &lead)?;
    let idx = lead.zero_based();
    let xi = st.x_sel(spec, &idx);
    let measured = squares(&tangents(&xi, &st.fy_sel(spec, &fv, &idx)?)?);
    let bound = times(&squares(&phi), &squares(&tangents(&xi, &st.y_sel(&idx)?)?));
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("aux_subspace_major", Comparison::WeakMajorization, measured, None, bound, tol)
        .with_meta("phi", phi)
        .applicable(separated))
}

/// `[ε₁, …, εᵢ] ≺_w tan²Θ(𝒳ᵢ, f(A)𝒴ᵢ)`.
pub fn bound_ritz_by_aux_angles<S: Scalar>(
    spec: &Spectrum<S>,
    f: &FilterSpec<S>,
    i: usize,
    y: &Subspace<S>,
) -> Result<BoundReport> {
    require_hermitian(spec)?;
    let st = Start::new(spec, y)?;
    let lead = IndexSet::leading(i)?;
    lead.check_within(st.p)?;
    let (fv, _, separated) = filter_moduli(spec, f, st.p)?;
    let fy = apply_filter(spec, f, &st.ytilde)?;
    let measured = desc(st.ritz_errors(spec, &fy, i)?);
    let idx = lead.zero_based();
    let bound = squares(&tangents(&st.x_sel(spec, &idx), &st.fy_sel(spec, &fv, &idx)?)?);
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("ritz_by_aux_angles", Comparison::WeakMajorization, measured, None, bound, tol).applicable(separated))
}

/// `[ε₁, …, εᵢ] ≺_w Φᵢ² Φ̂ᵢ² tan²Θ(𝒳ᵢ, 𝒴ᵢ) ≤ Φᵢ² Φ̂ᵢ² tan²Θᵢ(𝒳, 𝒴)` for the
/// Ritz values of `A` in `f(A)𝒴`.
pub fn bound_ritz_major<S: Scalar>(spec: &Spectrum<S>, f: &FilterSpec<S>, i: usize, y: &Subspace<S>) -> Result<BoundReport> {
    require_hermitian(spec)?;
    let st = Start::new(spec, y)?;
    let lead = IndexSet::leading(i)?;
    lead.check_within(st.p)?;
    let (_, m, _) = filter_moduli(spec, f, st.p)?;
    let (phi, separated) = phi_product(&m, st.p, &lead)?;
    let phi2 = squares(&phi);
    let fy = apply_filter(spec, f, &st.ytilde)?;
    let measured = desc(st.ritz_errors(spec, &fy, i)?);
    let idx = lead.zero_based();
    let aux = times(&phi2, &squares(&tangents(&st.x_sel(spec, &idx), &st.y_sel(&idx)?)?));
    let bound = times(&phi2, &squares(&st.tan_xy[..i]));
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("ritz_major", Comparison::WeakMajorization, measured, Some(aux), bound, tol)
        .with_meta("phi", phi)
        .applicable(separated))
}

fn check_split<S: Scalar>(v: &Subspace<S>, vperp: &Subspace<S>, n: usize) -> Result<()> {
    if v.ambient_dim() != n || vperp.ambient_dim() != n || v.dim() + vperp.dim() != n {
        return Err(Error::Dimension(format!("V ({}) and V⊥ ({}) must split dimension {n}", v.dim(), vperp.dim())));
    }
    let cross = v.basis().adjoint_mul(vperp.basis()).max_abs();
    if !(v.is_orthonormal() && vperp.is_orthonormal()) || cross > S::Real::tol(1e-10) {
        return Err(Error::NotOrthonormal(cross.to_f64_lossy()));
    }
    Ok(())
}

/// `‖Gᴴ V − V (Vᴴ Gᴴ V)‖_max` for the operator with eigenvalues `g`.
fn invariance_residual<S: Scalar>(op: &Spectrum<S>, g: &[S], v: &Matrix<S>) -> f64 {
    let gv = op.apply_values(g, v);
    (&gv - &v.matmul(&v.adjoint_mul(&gv))).max_abs().to_f64_lossy()
}

/// `S((VᴴFV)⁻¹)` truncated to `s` entries and `S_s(V⊥ᴴFV⊥)` zero padded to `s`.
fn compressed_factors<S: Scalar>(
    op: &Spectrum<S>,
    fv: &[S],
    v: &Subspace<S>,
    vperp: &Subspace<S>,
    s: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let fvv = v.basis().adjoint_mul(&op.apply_values(fv, v.basis()));
    let inv = inverse(&fvv).map_err(|_| Error::Singular)?;
    let mut a = to_f64(&singular_values(&inv)?);
    a.truncate(s);
    let fpp = vperp.basis().adjoint_mul(&op.apply_values(fv, vperp.basis()));
    let mut b = to_f64(&singular_values(&fpp)?);
    b.resize(s, 0.0);
    b.truncate(s);
    Ok((a, b))
}

/// `tan Θ(F𝒰, 𝒱) ≺_w S_s((VᴴFV)⁻¹) S_s(V⊥ᴴFV⊥) tan Θ(𝒰, 𝒱)` for the normal
/// operator `F`; `𝒱` and `𝒱⊥` must be invariant under `Fᴴ`.
pub fn bound_abstract_filter<S: Scalar>(
    fop: &Spectrum<S>,
    u: &Subspace<S>,
    v: &Subspace<S>,
    vperp: &Subspace<S>,
) -> Result<BoundReport> {
    let n = fop.n();
    check_split(v, vperp, n)?;
    let conj: Vec<S> = fop.values().iter().map(|z| z.conj()).collect();
    let scale = fop.values().iter().map(|z| z.modulus().to_f64_lossy()).fold(0.0, f64::max);
    let allowed = S::Real::tol(1e-10).to_f64_lossy() * scale.max(f64::MIN_POSITIVE);
    for w in [v, vperp] {
        let r = invariance_residual(fop, &conj, w.basis());
        if r > allowed {
            return Err(Error::Invalid(format!("subspace is not invariant under Fᴴ (residual {r:e})")));
        }
    }
    let s = u.dim();
    let fu = Subspace::new(fop.apply(u.basis()))?;
    let measured = tangents(&fu, v)?;
    let (a, b) = compressed_factors(fop, fop.values(), v, vperp, s)?;
    let factor = times(&a, &b);
    let bound = times(&factor, &tangents(u, v)?);
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("abstract_filter", Comparison::WeakMajorization, measured, None, bound, tol).with_meta("factor", factor))
}

/// Shared right-hand side `S²((VᴴFV)⁻¹) S_t²(V⊥ᴴFV⊥) tan²Θ(𝒰, 𝒱)` for `F = f(A)`
/// and `𝒱` spanned by the eigenvectors `vidx` (0-based).
fn abstract_ritz_rhs<S: Scalar>(
    spec: &Spectrum<S>,
    fv: &[S],
    u: &Subspace<S>,
    vidx: &[usize],
) -> Result<(Subspace<S>, Vec<f64>, Vec<f64>)> {
    let t = vidx.len();
    let rest: Vec<usize> = (0..spec.n()).filter(|j| !vidx.contains(j)).collect();
    let v = spec.invariant_subspace(vidx);
    let vperp = spec.invariant_subspace(&rest);
    let (a, b) = compressed_factors(spec, fv, &v, &vperp, t)?;
    let factor = squares(&times(&a, &b));
    let bound = times(&factor, &squares(&tangents(u, &v)?));
    Ok((v, factor, bound))
}

fn check_abstract_dims<S: Scalar>(spec: &Spectrum<S>, u: &Subspace<S>, t: usize) -> Result<()> {
    require_hermitian(spec)?;
    if u.ambient_dim() != spec.n() || u.dim() != t || t == 0 || t >= spec.n() {
        return Err(Error::Dimension(format!("𝒰 of dimension {} against t = {t} in {}", u.dim(), spec.n())));
    }
    Ok(())
}

/// `[(λⱼ − ψⱼ)/(ψⱼ − ψ)]_{j≤t} ≺_w S²((VᴴFV)⁻¹) S_t²(V⊥ᴴFV⊥) tan²Θ(𝒰, 𝒱)`
/// for `F = f(A)`, `𝒱 = span{x₁, …, x_t}` with `t = dim 𝒰`, the Ritz values
/// `ψⱼ` of `A` in `F𝒰` and the smallest Ritz value `ψ` of `A` in `F𝒰 + 𝒱`.
pub fn bound_ritz_abstract<S: Scalar>(spec: &Spectrum<S>, f: &FilterSpec<S>, u: &Subspace<S>) -> Result<BoundReport> {
    let t = u.dim();
    check_abstract_dims(spec, u, t)?;
    let fv = f.values_on(spec)?;
    let vidx: Vec<usize> = (0..t).collect();
    let (v, factor, bound) = abstract_ritz_rhs(spec, &fv, u, &vidx)?;
    let fu = Subspace::new(spec.apply_values(&fv, u.basis()))?;
    let psi = to_f64(&ritz_values(spec, fu.orthonormalized()?.basis())?);
    let enclosing = to_f64(&ritz_values(spec, fu.sum(&v)?.basis())?);
    let lowest = enclosing[enclosing.len() - 1];
    let lam = to_f64(&spec.real_values());
    let floor = DENOMINATOR_FLOOR * (lam[0] - lam[lam.len() - 1]);
    let measured = desc(ritz_ratios(&lam, &psi, t, lowest, floor));
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("ritz_abstract", Comparison::WeakMajorization, measured, None, bound, tol)
        .with_meta("factor", factor)
        .with_meta("psi_lowest", vec![lowest]))
}

/// `d/(ζ − d) ≺_w S²((VᴴFV)⁻¹) S_t²(V⊥ᴴFV⊥) tan²Θ(𝒰, 𝒱)` with
/// `d = |Λ(VᴴAV) − Λ(WᴴAW)|`, `W` an orthonormal basis of `F𝒰`, and `ζ` the
/// spread of the Ritz values of `A` in `F𝒰 + 𝒱`. `𝒱` is spanned by the
/// eigenvectors `vidx` (0-based) and may belong to interior eigenvalues.
pub fn bound_ritz_spread<S: Scalar>(
    spec: &Spectrum<S>,
    f: &FilterSpec<S>,
    u: &Subspace<S>,
    vidx: &[usize],
) -> Result<BoundReport> {
    let t = vidx.len();
    check_abstract_dims(spec, u, t)?;
    if vidx.iter().any(|&j| j >= spec.n()) {
        return Err(Error::IndexOutOfRange(format!("{vidx:?} in dimension {}", spec.n())));
    }
    let fv = f.values_on(spec)?;
    let (v, factor, bound) = abstract_ritz_rhs(spec, &fv, u, vidx)?;
    let w = Subspace::new(spec.apply_values(&fv, u.basis()))?.orthonormalized()?;
    let lam = to_f64(&spec.real_values());
    let theirs = desc(vidx.iter().map(|&j| lam[j]).collect());
    let ours = to_f64(&hermitian_eigenvalues(&spec.compress(w.basis()).hermitian_part())?);
    let enclosing = to_f64(&ritz_values(spec, w.sum(&v)?.basis())?);
    let zeta = enclosing[0] - enclosing[enclosing.len() - 1];
    let floor = DENOMINATOR_FLOOR * (lam[0] - lam[lam.len() - 1]);
    let measured = desc(
        theirs
            .iter()
            .zip(&ours)
            .map(|(a, b)| {
                let d = (a - b).abs();
                if zeta - d < floor {
                    f64::INFINITY
                } else {
                    d / (zeta - d)
                }
            })
            .collect(),
    );
    let tol = default_tolerance::<S::Real>();
    Ok(BoundReport::new("ritz_spread", Comparison::WeakMajorization, measured, None, bound, tol)
        .with_meta("factor", factor)
        .with_meta("spread", vec![zeta]))
}

/// Source of the interval `[λ_n, λ_{p+1}]` in the Lanczos bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum ChebyParams {
    /// Eigenvalues of `A`.
    #[default]
    Eigen,
    /// The `(p+1)`-th and smallest Ritz values of `A` in `𝒳 + 𝒦`. The Ritz
    /// bounds then also measure against that smallest Ritz value.
    Ritz,
}

/// Chebyshev factors for one Krylov step.
#[derive(Clone, Debug)]
pub struct LanczosFactors {
    /// `σ₁, …, σ_p`.
    pub sigma: Vec<f64>,
    /// Lower end of the interval.
    pub lower: f64,
}

/// One block Lanczos run `𝒦ₖ = 𝒴 + A𝒴 + ⋯ + A^{k−1}𝒴` for `k ≤ k_max`, with
/// the start data needed by the Lanczos bounds.
pub struct LanczosRun<'a, S: Scalar> {
    spec: &'a Spectrum<S>,
    start: Start<S>,
    krylov: BlockKrylov<'a, S, Spectrum<S>>,
    /// `QᴴAQ` for the full basis `Q`; leading blocks are the compressions.
    h: Matrix<S>,
    params: ChebyParams,
    factor_cache: RefCell<Vec<Option<LanczosFactors>>>,
    ritz_cache: RefCell<Vec<Option<Vec<f64>>>>,
}

impl<'a, S: Scalar> LanczosRun<'a, S> {
    pub fn new(spec: &'a Spectrum<S>, y: &Subspace<S>, k_max: usize, params: ChebyParams) -> Result<Self> {
        require_hermitian(spec)?;
        if k_max == 0 {
            return Err(Error::Invalid("k_max must be at least 1".into()));
        }
        let start = Start::new(spec, y)?;
        let mut krylov = BlockKrylov::new(spec, start.ytilde.basis())?;
        krylov.extend_to(k_max);
        let h = spec.compress(krylov.basis()).hermitian_part();
        Ok(Self {
            spec,
            start,
            krylov,
            h,
            params,
            factor_cache: RefCell::new(vec![None; k_max]),
            ritz_cache: RefCell::new(vec![None; k_max]),
        })
    }

    pub fn k_max(&self) -> usize {
        self.krylov.steps()
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.k_max() {
            return Err(Error::IndexOutOfRange(format!("k = {k} outside 1..={}", self.k_max())));
        }
        Ok(())
    }

    pub fn subspace(&self, k: usize) -> Result<Subspace<S>> {
        self.check_k(k)?;
        Ok(self.krylov.subspace(k))
    }

    /// All Ritz values of `A` in `𝒦ₖ`, descending.
    pub fn ritz_values(&self, k: usize) -> Result<Vec<f64>> {
        self.check_k(k)?;
        if let Some(v) = &self.ritz_cache.borrow()[k - 1] {
            return Ok(v.clone());
        }
        let d = self.krylov.dim_at(k);
        let v = to_f64(&hermitian_eigenvalues(&self.h.submatrix(0, 0, d, d))?);
        self.ritz_cache.borrow_mut()[k - 1] = Some(v.clone());
        Ok(v)
    }

    /// Eigenvalues of `A`, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.start.lam
    }

    /// `tan Θ(𝒳, 𝒴)`, descending.
    pub fn initial_tangents(&self) -> &[f64] {
        &self.start.tan_xy
    }

    /// `tan Θ(𝒳_τ, 𝒴_τ)`, descending.
    pub fn aux_tangents(&self, tau: &IndexSet) -> Result<Vec<f64>> {
        tau.check_within(self.start.p)?;
        let idx = tau.zero_based();
        tangents(&self.start.x_sel(self.spec, &idx), &self.start.y_sel(&idx)?)
    }

    /// `tan Θ(𝒳_τ, 𝒦ₖ)`, descending.
    pub fn krylov_tangents(&self, k: usize, tau: &IndexSet) -> Result<Vec<f64>> {
        tau.check_within(self.start.p)?;
        tangents(&self.start.x_sel(self.spec, &tau.zero_based()), &self.subspace(k)?)
    }

    pub fn factors(&self, k: usize) -> Result<LanczosFactors> {
        self.check_k(k)?;
        if let Some(f) = &self.factor_cache.borrow()[k - 1] {
            return Ok(f.clone());
        }
        let f = self.compute_factors(k)?;
        self.factor_cache.borrow_mut()[k - 1] = Some(f.clone());
        Ok(f)
    }

    fn compute_factors(&self, k: usize) -> Result<LanczosFactors> {
        let (p, lam) = (self.start.p, &self.start.lam);
        let (lam_p1, lower) = match self.params {
            ChebyParams::Eigen => (lam[p], lam[lam.len() - 1]),
            ChebyParams::Ritz => {
                let v = enclosing_basis(self.krylov.subspace(k).basis(), self.start.x.basis())?;
                let mu = to_f64(&ritz_values(self.spec, &v)?);
                let lowest = mu[mu.len() - 1];
                if mu.len() <= p {
                    // 𝒦 = 𝒳: every wanted vector is already captured.
                    return Ok(LanczosFactors { sigma: vec![0.0; p], lower: lowest });
                }
                if mu[p] - lowest <= DENOMINATOR_FLOOR * (lam[0] - lam[lam.len() - 1]) {
                    // A single unwanted Ritz value is annihilated by a linear factor.
                    let s = if k == 1 { 1.0 } else { 0.0 };
                    return Ok(LanczosFactors { sigma: vec![s; p], lower: lowest });
                }
                (mu[p], lowest)
            }
        };
        let cf = convergence_factors_with(&lam[..p], lam_p1, lower, k)?;
        Ok(LanczosFactors { sigma: cf.sigma, lower })
    }

    /// `[σ_j : j ∈ τ]`, descending.
    fn sigma_tau(&self, sigma: &[f64], tau: &IndexSet) -> Vec<f64> {
        desc(tau.zero_based().iter().map(|&j| sigma[j]).collect())
    }

    /// `tan Θ(𝒳_τ, 𝒦ₖ) ≺_w [σ_{i_t}, …, σ_{i_1}] tan Θ(𝒳_τ, 𝒴_τ) ≤ […] tan Θ_t(𝒳, 𝒴)`.
    pub fn angles(&self, k: usize, tau: &IndexSet) -> Result<BoundReport> {
        let lf = self.factors(k)?;
        let st = self.sigma_tau(&lf.sigma, tau);
        let measured = self.krylov_tangents(k, tau)?;
        let aux = times(&st, &self.aux_tangents(tau)?);
        let bound = times(&st, &self.start.tan_xy[..tau.len()]);
        let tol = default_tolerance::<S::Real>();
        Ok(BoundReport::new("lanczos_angles", Comparison::WeakMajorization, measured, Some(aux), bound, tol).with_meta("sigma", st))
    }

    /// `[(λⱼ − ψⱼ)/(ψⱼ − λ_n)]_{j≤i} ≺_w [σᵢ², …, σ₁²] tan²Θ(𝒳ᵢ, 𝒴ᵢ) ≤ […] tan²Θᵢ(𝒳, 𝒴)`.
    pub fn ritz(&self, k: usize, i: usize) -> Result<BoundReport> {
        let lead = IndexSet::leading(i)?;
        lead.check_within(self.start.p)?;
        let lf = self.factors(k)?;
        let s2 = squares(&self.sigma_tau(&lf.sigma, &lead));
        let psi = self.ritz_values(k)?;
        let measured = desc(ritz_ratios(&self.start.lam, &psi, i, lf.lower, self.start.floor()));
        let aux = times(&s2, &squares(&self.aux_tangents(&lead)?));
        let bound = times(&s2, &squares(&self.start.tan_xy[..i]));
        let tol = default_tolerance::<S::Real>();
        Ok(BoundReport::new("lanczos_ritz", Comparison::WeakMajorization, measured, Some(aux), bound, tol)
            .with_meta("sigma_squared", s2))
    }

    /// `Σ_{j≤l} tan θⱼ(𝒳_τ, 𝒦ₖ) ≤ σ_{i_t} Σ_{j≤l} tan θⱼ(𝒳_τ, 𝒴_τ)`, with the
    /// final side `σ_{i_t} tan Θ_t(𝒳, 𝒴)`.
    pub fn lz_angles(&self, k: usize, tau: &IndexSet) -> Result<BoundReport> {
        let lf = self.factors(k)?;
        let s = lf.sigma[tau.last() - 1];
        let measured = self.krylov_tangents(k, tau)?;
        let aux = self.aux_tangents(tau)?.iter().map(|v| s * v).collect();
        let bound = self.start.tan_xy[..tau.len()].iter().map(|v| s * v).collect();
        let tol = default_tolerance::<S::Real>();
        Ok(BoundReport::new("lz_angles", Comparison::PrefixSums, measured, Some(aux), bound, tol).with_meta("sigma", vec![s]))
    }

    /// `Σ_{j≤l} (λⱼ − ψⱼ)/(λ₁ − λ_n) ≤ σᵢ² Σ_{j≤l} tan²θⱼ(𝒳ᵢ, 𝒴ᵢ)`, with the
    /// final side `σᵢ² tan²Θᵢ(𝒳, 𝒴)`.
    pub fn lz_ritz(&self, k: usize, i: usize) -> Result<BoundReport> {
        let lead = IndexSet::leading(i)?;
        lead.check_within(self.start.p)?;
        let lf = self.factors(k)?;
        let s2 = lf.sigma[i - 1].powi(2);
        let lam = &self.start.lam;
        let width = lam[0] - lam[lam.len() - 1];
        let psi = self.ritz_values(k)?;
        let measured = (0..i).map(|j| (lam[j] - psi[j]) / width).collect();
        let aux = squares(&self.aux_tangents(&lead)?).iter().map(|v| s2 * v).collect();
        let bound = squares(&self.start.tan_xy[..i]).iter().map(|v| s2 * v).collect();
        let tol = default_tolerance::<S::Real>();
        Ok(BoundReport::new("lz_ritz", Comparison::PrefixSums, measured, Some(aux), bound, tol)
            .with_meta("sigma_squared", vec![s2]))
    }
}

/// Orthonormal basis of `range(K) + range(X)` for orthonormal `K` and `X`:
/// `K` followed by the directions of `X` that stick out of `range(K)` by
/// more than `1e-10`.
fn enclosing_basis<S: Scalar>(k: &Matrix<S>, x: &Matrix<S>) -> Result<Matrix<S>> {
    let mut r = x.clone();
    for _ in 0..2 {
        r = &r - &k.matmul(&k.adjoint_mul(&r));
    }
    let d = svd(&r)?;
    let keep = d.singulars.iter().filter(|s| s.to_f64_lossy() > 1e-10).count();
    Ok(k.hstack(&d.left.leading_columns(keep)))
}

/// Block Lanczos angle bound for `𝒦ₖ`; see [`LanczosRun::angles`].
pub fn bound_lanczos_angles<S: Scalar>(
    spec: &Spectrum<S>,
    y: &Subspace<S>,
    k: usize,
    tau: &IndexSet,
    params: ChebyParams,
) -> Result<BoundReport> {
    LanczosRun::new(spec, y, k, params)?.angles(k, tau)
}

/// Block Lanczos Ritz-value bound for `𝒦ₖ`; see [`LanczosRun::ritz`].
pub fn bound_lanczos_ritz<S: Scalar>(
    spec: &Spectrum<S>,
    y: &Subspace<S>,
    k: usize,
    i: usize,
    params: ChebyParams,
) -> Result<BoundReport> {
    LanczosRun::new(spec, y, k, params)?.ritz(k, i)
}

/// Scalar-factor comparison angle bound; see [`LanczosRun::lz_angles`].
pub fn bound_lz_angles<S: Scalar>(spec: &Spectrum<S>, y: &Subspace<S>, k: usize, tau: &IndexSet) -> Result<BoundReport> {
    LanczosRun::new(spec, y, k, ChebyParams::Eigen)?.lz_angles(k, tau)
}

/// Scalar-factor comparison Ritz bound; see [`LanczosRun::lz_ritz`].
pub fn bound_lz_ritz<S: Scalar>(spec: &Spectrum<S>, y: &Subspace<S>, k: usize, i: usize) -> Result<BoundReport> {
    LanczosRun::new(spec, y, k, ChebyParams::Eigen)?.lz_ritz(k, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SampleRng;
    use num_complex::Complex64;

    fn diag3() -> Spectrum<f64> {
        Spectrum::diagonal(vec![2.0, 1.0, 0.5]).unwrap().with_p(1).unwrap()
    }

    fn ones3() -> Subspace<f64> {
        Subspace::new(Matrix::column_vector(&[1.0, 1.0, 1.0])).unwrap()
    }

    #[test]
    fn power_hand_case() {
        // tan∠(x₁, A𝒴) = √(1 + 1/4)/2, bound (1/2)·√2.
        let r = bound_power_tangent(&diag3(), &ones3(), 1).unwrap();
        assert!((r.measured[0] - 1.25f64.sqrt() / 2.0).abs() < 1e-14);
        assert!((r.bound[0] - 0.5 * 2f64.sqrt()).abs() < 1e-14);
        assert!(r.verdict.holds);
        let r0 = bound_power_tangent(&diag3(), &ones3(), 0).unwrap();
        assert!((r0.measured[0] - r0.bound[0]).abs() < 1e-14);
    }

    #[test]
    fn power_needs_modulus_gap() {
        let spec = Spectrum::<f64>::diagonal(vec![2.0, 1.0, -3.0]).unwrap().with_p(1).unwrap();
        assert!(matches!(bound_power_tangent(&spec, &ones3(), 1), Err(Error::GapViolation(_))));
    }

    #[test]
    fn wanted_start_gives_zero() {
        let spec = Spectrum::<f64>::diagonal(vec![3.0, 2.0, 1.0, 0.5]).unwrap().with_p(2).unwrap();
        let y = spec.wanted_subspace().unwrap();
        let r = bound_chebyshev_tangent(&spec, &y, 3).unwrap();
        assert!(r.measured.iter().chain(&r.bound).all(|v| v.abs() < 1e-15));
        let r = bound_chebyshev_ritz(&spec, &y, 3).unwrap();
        assert!(r.measured.iter().all(|v| v.abs() < 1e-14));
        assert!(r.verdict.holds);
    }

    #[test]
    fn violation_is_reported() {
        let r = BoundReport::new(
            "t",
            Comparison::WeakMajorization,
            vec![2.0, 0.0],
            None,
            vec![1.0, 1.0],
            Tolerance::relative(1e-8),
        );
        assert!(!r.verdict.holds);
        assert!(verify_report(&r, Tolerance::new(0.0, 1.5)).holds);
        let c = BoundReport::new("c", Comparison::Componentwise, vec![f64::INFINITY, 0.5], None, vec![1.0, 1.0], Tolerance::default());
        assert_eq!(c.excluded, 1);
        assert!(c.verdict.holds);
    }

    #[test]
    fn prefix_sums_keep_index_order() {
        let r = BoundReport::new("p", Comparison::PrefixSums, vec![0.1, 0.5], None, vec![0.3, 0.3], Tolerance::default());
        assert!(r.verdict.holds);
        let w = BoundReport::new("w", Comparison::WeakMajorization, vec![0.1, 0.5], None, vec![0.3, 0.3], Tolerance::default());
        assert!(!w.verdict.holds);
    }

    fn random_case(seed: u64, n: usize, p: usize) -> (Spectrum<Complex64>, Subspace<Complex64>) {
        let mut rng = SampleRng::for_stream(seed, 0);
        let mut vals: Vec<f64> = (0..n).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
        for v in vals.iter_mut().take(p) {
            *v += 1.5;
        }
        let spec = Spectrum::hermitian(vals, rng.unitary(n)).unwrap().with_p(p).unwrap();
        let y = Subspace::new(rng.gaussian_matrix(n, p)).unwrap();
        (spec, y)
    }

    #[test]
    fn filter_bounds_hold_on_random_instance() {
        let (spec, y) = random_case(5, 30, 4);
        let k = 4;
        let lam = spec.real_values();
        let f = make_shifted_chebyshev(lam[4], lam[29], k).unwrap();
        let tau = IndexSet::new(vec![2, 3]).unwrap();
        let reports = vec![
            bound_filtered_tangent(&spec, &f, &y).unwrap(),
            bound_chebyshev_tangent(&spec, &y, k).unwrap(),
            bound_aux_subspace_tangent(&spec, &f, &y).unwrap(),
            bound_ritz_by_aux_angle(&spec, &f, &y).unwrap(),
            bound_filtered_ritz(&spec, &f, &y).unwrap(),
            bound_chebyshev_ritz(&spec, &y, k).unwrap(),
            bound_stationary_major(&spec, &y, k).unwrap(),
            bound_multiangle_major(&spec, &f, &tau, &y).unwrap(),
            bound_aux_subspace_major(&spec, &f, 3, &y).unwrap(),
            bound_ritz_by_aux_angles(&spec, &f, 3, &y).unwrap(),
            bound_ritz_major(&spec, &f, 3, &y).unwrap(),
            bound_lanczos_angles(&spec, &y, k, &tau, ChebyParams::Eigen).unwrap(),
            bound_lanczos_angles(&spec, &y, k, &tau, ChebyParams::Ritz).unwrap(),
            bound_lanczos_ritz(&spec, &y, k, 3, ChebyParams::Eigen).unwrap(),
            bound_lanczos_ritz(&spec, &y, k, 3, ChebyParams::Ritz).unwrap(),
            bound_lz_angles(&spec, &y, k, &tau).unwrap(),
            bound_lz_ritz(&spec, &y, k, 3).unwrap(),
        ];
        for r in reports {
            assert!(r.applicable, "{}", r.name);
            assert!(r.verdict.holds, "{} {:?}", r.name, r.verdict);
        }
    }

    #[test]
    fn abstract_bounds_hold_on_random_instance() {
        let (spec, _) = random_case(6, 20, 3);
        let mut rng = SampleRng::for_stream(6, 1);
        let u = Subspace::new(rng.gaussian_matrix::<Complex64>(20, 3)).unwrap();
        let f = FilterSpec::Polynomial { coeffs: vec![Complex64::new(0.3, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)] };
        assert!(bound_ritz_abstract(&spec, &f, &u).unwrap().verdict.holds);
        let r = bound_ritz_spread(&spec, &f, &u, &[1, 4, 7]).unwrap();
        assert!(r.verdict.holds, "{r:?}");

        let fv = f.values_on(&spec).unwrap();
        let x = spec.eigenvectors(&(0..20).collect::<Vec<_>>());
        let fop = Spectrum::normal(fv, x).unwrap();
        let v = spec.invariant_subspace(&[0, 1, 2, 3]);
        let vperp = spec.invariant_subspace(&(4..20).collect::<Vec<_>>());
        let r = bound_abstract_filter(&fop, &u, &v, &vperp).unwrap();
        assert!(r.verdict.holds, "{r:?}");
        let skew = Subspace::new(rng.gaussian_matrix::<Complex64>(20, 4)).unwrap().orthonormalized().unwrap();
        let skew_perp = skew.complement().unwrap();
        assert!(bound_abstract_filter(&fop, &u, &skew, &skew_perp).is_err());
    }

    #[test]
    fn lanczos_first_step_is_the_start() {
        let (spec, y) = random_case(7, 25, 3);
        let run = LanczosRun::new(&spec, &y, 3, ChebyParams::Eigen).unwrap();
        let tau = IndexSet::leading(3).unwrap();
        let r = run.angles(1, &tau).unwrap();
        assert!(r.factors_are_one());
        for (a, b) in r.measured.iter().zip(run.initial_tangents()) {
            assert!((a - b).abs() < 1e-10 * b.max(1.0));
        }
    }

    impl BoundReport {
        fn factors_are_one(&self) -> bool {
            self.metadata[0].1.iter().all(|s| (s - 1.0).abs() < 1e-15)
        }
    }
}
