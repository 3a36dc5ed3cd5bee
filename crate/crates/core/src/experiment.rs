//! Monte Carlo comparison of block Lanczos and block Chebyshev iterates with
//! the tuple-factor and scalar-factor convergence bounds.
//!
//! Each sample draws `Y = [orth(randn(p,p)); randn(n−p,p)]`, builds the block
//! Krylov subspaces `𝒦ₖ` for `k = 1..=k_max`, and evaluates two panels:
//!
//! * angles: `Σ_{j≤t} tan θⱼ(𝒳_τ, ·)` for `𝒦ₖ` and for `Tₖ₋₁(A)𝒴`, with the
//!   bounds `Σ [σ_{i_t}, …, σ_{i_1}] tan Θ(𝒳_τ, 𝒴_τ)` and `σ_{i_t} Σ tan θⱼ(𝒳_τ, 𝒴_τ)`;
//! * Ritz values: `Σ_{j≤i} (λⱼ − ψⱼ)/(λ₁ − λ_n)` with the squared analogues.
//!
//! Samples run in parallel; aggregation walks them in index order, so the
//! output does not depend on the thread count.

use std::fmt::Write as _;
use std::io;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound_multiangle_major, bound_ritz_major, default_tolerance, verify_report, BoundReport, ChebyParams, LanczosRun};
use crate::eigensolvers::{ritz_values, Spectrum};
use crate::error::{Error, Result};
use crate::filters::{apply_filter, make_shifted_chebyshev};
use crate::linalg::orthonormalize;
use crate::majorization::Tolerance;
use crate::rng::SampleRng;
use crate::subspaces::{IndexSet, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Example {
    Example1,
    Example2,
    Custom,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Aggregation {
    #[default]
    Mean,
    Max,
}

/// Denominator of the Ritz panel measure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum RitzDenominator {
    /// `λ₁ − λ_n` for every term.
    #[default]
    Lam1,
    /// `ψⱼ − λ_n`.
    Psi,
}

/// Which right-hand side of the tuple bounds enters the bound columns.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum RhsForm {
    /// Through `𝒴_τ` and `𝒴ᵢ`, spanned by the biorthogonal basis.
    #[default]
    Aux,
    /// Through the leading angles `Θ_t(𝒳, 𝒴)`.
    Eliminated,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub example: Example,
    pub eigenvalues: Vec<f64>,
    pub p: usize,
    pub tau: IndexSet,
    pub i: usize,
    pub k_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub aggregation: Aggregation,
    pub ritz_denominator: RitzDenominator,
    pub cheby_params: ChebyParams,
    /// Cap the Ritz panel bounds at `i`, the trivial bound with the `λ₁ − λ_n` denominator.
    pub cap: bool,
    pub rhs: RhsForm,
    pub tolerance: Tolerance,
}

impl ExperimentConfig {
    fn with_spectrum(example: Example, eigenvalues: Vec<f64>, p: usize, tau: IndexSet, i: usize) -> Self {
        Self {
            example,
            eigenvalues,
            p,
            tau,
            i,
            k_max: 15,
            samples: 1000,
            seed: 0,
            aggregation: Aggregation::Mean,
            ritz_denominator: RitzDenominator::Lam1,
            cheby_params: ChebyParams::Eigen,
            cap: true,
            rhs: RhsForm::Aux,
            tolerance: default_tolerance::<f64>(),
        }
    }

    /// `n = 900`, `p = 3`, `τ = {1, 2, 3}`, `i = 3`.
    pub fn example1() -> Self {
        Self::with_spectrum(Example::Example1, example_eigenvalues(Example::Example1), 3, IndexSet::leading(3).unwrap(), 3)
    }

    /// `n = 3600`, `p = 9`, `τ = {3, …, 8}`, `i = 8`.
    pub fn example2() -> Self {
        Self::with_spectrum(Example::Example2, example_eigenvalues(Example::Example2), 9, IndexSet::range(3, 8).unwrap(), 8)
    }

    /// Reads `key = value` lines: `n`, `p`, `eigenvalues`, `tau`, `i`, `k_max`,
    /// and optionally `leading`. Blank lines and `#` comments are skipped.
    ///
    /// `eigenvalues` is either a comma list of `n` values or
    /// `formula:linear,a,b`, which spaces `n` values evenly from `a` to `b`.
    /// `leading` then overwrites the first entries with a comma list.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut n = None;
        let mut p = None;
        let mut eig = None;
        let mut leading = None;
        let mut tau = None;
        let mut i = None;
        let mut k_max = None;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("line {}: expected key = value", no + 1)))?;
            let value = value.trim();
            match key.trim() {
                "n" => n = Some(parse_count("n", value)?),
                "p" => p = Some(parse_count("p", value)?),
                "eigenvalues" => eig = Some(value.to_string()),
                "leading" => leading = Some(parse_list(value)?),
                "tau" => tau = Some(IndexSet::from_str(value)?),
                "i" => i = Some(parse_count("i", value)?),
                "k_max" => k_max = Some(parse_count("k_max", value)?),
                other => return Err(Error::Invalid(format!("line {}: unknown key {other:?}", no + 1))),
            }
        }
        let missing = |k: &str| Error::Invalid(format!("missing key {k}"));
        let n = n.ok_or_else(|| missing("n"))?;
        let p = p.ok_or_else(|| missing("p"))?;
        let mut eigenvalues = parse_eigenvalues(&eig.ok_or_else(|| missing("eigenvalues"))?, n)?;
        if let Some(head) = leading {
            if head.len() > n {
                return Err(Error::Invalid(format!("{} leading values for n = {n}", head.len())));
            }
            eigenvalues[..head.len()].copy_from_slice(&head);
        }
        let tau = tau.unwrap_or(IndexSet::leading(p)?);
        let i = i.unwrap_or(p);
        let mut cfg = Self::with_spectrum(Example::Custom, eigenvalues, p, tau, i);
        if let Some(k) = k_max {
            cfg.k_max = k;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.samples == 0 || self.k_max == 0 {
            return Err(Error::Invalid("samples and k_max must be at least 1".into()));
        }
        if self.p == 0 || self.p >= n {
            return Err(Error::Invalid(format!("p = {} must lie in 1..{n}", self.p)));
        }
        if self.eigenvalues.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("eigenvalues must be non-increasing".into()));
        }
        if !(self.eigenvalues[self.p - 1] > self.eigenvalues[self.p]) {
            return Err(Error::GapViolation(format!("λ_p must exceed λ_(p+1) for p = {}", self.p)));
        }
        if !(self.eigenvalues[self.p] > self.eigenvalues[n - 1]) {
            return Err(Error::DegenerateInterval(self.eigenvalues[n - 1], self.eigenvalues[self.p]));
        }
        self.tau.check_within(self.p)?;
        if self.i == 0 || self.i > self.p {
            return Err(Error::IndexOutOfRange(format!("i = {} outside 1..={}", self.i, self.p)));
        }
        Ok(())
    }
}

fn parse_count(key: &str, v: &str) -> Result<usize> {
    v.parse().map_err(|_| Error::Invalid(format!("{key}: expected a count, got {v:?}")))
}

fn parse_list(v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("not a number: {s:?}"))))
        .collect()
}

fn parse_eigenvalues(v: &str, n: usize) -> Result<Vec<f64>> {
    if let Some(rest) = v.strip_prefix("formula:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        if parts.len() != 3 || parts[0] != "linear" {
            return Err(Error::Invalid(format!("unsupported formula {rest:?}; expected linear,a,b")));
        }
        let (a, b) = (parse_list(parts[1])?[0], parse_list(parts[2])?[0]);
        if n < 2 {
            return Ok(vec![a; n]);
        }
        return Ok((0..n).map(|j| a + (b - a) * j as f64 / (n - 1) as f64).collect());
    }
    let vals = parse_list(v)?;
    if vals.len() != n {
        return Err(Error::Invalid(format!("{} eigenvalues listed for n = {n}", vals.len())));
    }
    Ok(vals)
}

/// Eigenvalues of the two test matrices: a few separated top values followed
/// by `λⱼ = 1 − (j − p)/n`.
pub fn example_eigenvalues(which: Example) -> Vec<f64> {
    let (n, head): (usize, &[f64]) = match which {
        Example::Example1 => (900, &[2.0, 1.6, 1.4]),
        Example::Example2 => (3600, &[2.05, 2.0, 1.95, 1.65, 1.6, 1.55, 1.45, 1.4, 1.35]),
        Example::Custom => (0, &[]),
    };
    let p = head.len();
    let mut lam = head.to_vec();
    lam.extend((p + 1..=n).map(|j| 1.0 - (j - p) as f64 / n as f64));
    lam
}

/// Diagonal operator with the example eigenvalues; `p` is the number of
/// separated top values.
pub fn build_example_spectrum(which: Example) -> Result<Spectrum<f64>> {
    let p = match which {
        Example::Example1 => 3,
        Example::Example2 => 9,
        Example::Custom => return Err(Error::Invalid("custom spectra come from a config file".into())),
    };
    Spectrum::diagonal(example_eigenvalues(which))?.with_p(p)
}

/// `[orth(randn(p,p)); randn(n−p,p)]`. Redraws the top block while it is
/// numerically singular and returns the number of redraws.
pub fn sample_initial_subspace(n: usize, p: usize, rng: &mut SampleRng) -> Result<(Subspace<f64>, usize)> {
    if p == 0 || p >= n {
        return Err(Error::Invalid(format!("p = {p} must lie in 1..{n}")));
    }
    let mut redraws = 0;
    let top = loop {
        match orthonormalize(&rng.gaussian_matrix::<f64>(p, p)) {
            Ok(q) => break q,
            Err(Error::RankDeficient { .. }) if redraws < 16 => redraws += 1,
            Err(e) => return Err(e),
        }
    };
    let bottom = rng.gaussian_matrix::<f64>(n - p, p);
    Ok((Subspace::new(top.vstack(&bottom))?, redraws))
}

/// Aggregated values of one panel at one `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub k: usize,
    /// Block Lanczos measure.
    pub measure_mean: f64,
    pub chebyshev_mean: f64,
    pub bound_new_mean: f64,
    pub bound_lz_mean: f64,
    /// Samples with a bound violated beyond the tolerance.
    pub violations: usize,
    /// Bound columns before the cap; equal to the capped ones on the angle panel.
    pub bound_new_raw_mean: f64,
    pub bound_lz_raw_mean: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentResult {
    pub angles: Vec<ExperimentRow>,
    pub ritz: Vec<ExperimentRow>,
    /// Samples that contributed to the rows.
    pub completed: usize,
    /// Samples aborted by a numerical error, with the diagnostic.
    pub failed: Vec<(usize, String)>,
    pub redraws: usize,
    /// First violating report per panel, for diagnosis.
    #[serde(skip)]
    pub first_violation: Option<(usize, usize, BoundReport)>,
}

impl ExperimentResult {
    pub fn total_violations(&self) -> usize {
        self.angles.iter().chain(&self.ritz).map(|r| r.violations).sum()
    }
}

/// Per-sample values for one `k`: six numbers per panel plus violation flags.
#[derive(Clone, Debug, Default)]
struct Point {
    angle: [f64; 6],
    ritz: [f64; 6],
    angle_violation: bool,
    ritz_violation: bool,
}

struct SampleOutcome {
    points: Vec<Point>,
    redraws: usize,
    violation: Option<(usize, BoundReport)>,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let spec = Spectrum::diagonal(cfg.eigenvalues.clone())?.with_p(cfg.p)?;
    let outcomes: Vec<Result<SampleOutcome>> = (0..cfg.samples).into_par_iter().map(|s| run_sample(cfg, &spec, s)).collect();

    let mut failed = Vec::new();
    let mut redraws = 0;
    let mut first_violation = None;
    let mut done: Vec<Vec<Point>> = Vec::new();
    for (s, out) in outcomes.into_iter().enumerate() {
        match out {
            Ok(o) => {
                redraws += o.redraws;
                if first_violation.is_none() {
                    first_violation = o.violation.map(|(k, r)| (s, k, r));
                }
                done.push(o.points);
            }
            Err(e) => failed.push((s, e.to_string())),
        }
    }
    if done.is_empty() {
        return Err(Error::Invalid(format!("every sample failed; first: {}", failed[0].1)));
    }
    let aggregate = |k: usize, pick: &dyn Fn(&Point) -> ([f64; 6], bool)| -> ExperimentRow {
        let mut acc = [0.0; 6];
        let mut violations = 0;
        if cfg.aggregation == Aggregation::Max {
            acc = [f64::NEG_INFINITY; 6];
        }
        for pts in &done {
            let (v, bad) = pick(&pts[k - 1]);
            violations += bad as usize;
            for (a, x) in acc.iter_mut().zip(v) {
                match cfg.aggregation {
                    Aggregation::Mean => *a += x,
                    Aggregation::Max => *a = a.max(x),
                }
            }
        }
        if cfg.aggregation == Aggregation::Mean {
            acc.iter_mut().for_each(|a| *a /= done.len() as f64);
        }
        ExperimentRow {
            k,
            measure_mean: acc[0],
            chebyshev_mean: acc[1],
            bound_new_mean: acc[2],
            bound_lz_mean: acc[3],
            violations,
            bound_new_raw_mean: acc[4],
            bound_lz_raw_mean: acc[5],
        }
    };
    let angles = (1..=cfg.k_max).map(|k| aggregate(k, &|p: &Point| (p.angle, p.angle_violation))).collect();
    let ritz = (1..=cfg.k_max).map(|k| aggregate(k, &|p: &Point| (p.ritz, p.ritz_violation))).collect();
    Ok(ExperimentResult { angles, ritz, completed: done.len(), failed, redraws, first_violation })
}

fn run_sample(cfg: &ExperimentConfig, spec: &Spectrum<f64>, s: usize) -> Result<SampleOutcome> {
    let mut rng = SampleRng::for_stream(cfg.seed, s as u64);
    let (y, redraws) = sample_initial_subspace(cfg.n(), cfg.p, &mut rng)?;
    let run = LanczosRun::new(spec, &y, cfg.k_max, cfg.cheby_params)?;
    let lam = run.eigenvalues().to_vec();
    let n = lam.len();
    let width = lam[0] - lam[n - 1];
    let cap = |v: f64| if cfg.cap { v.min(cfg.i as f64) } else { v };
    let ritz_measure = |psi: &[f64]| -> f64 {
        (0..cfg.i)
            .map(|j| match cfg.ritz_denominator {
                RitzDenominator::Lam1 => (lam[j] - psi[j]) / width,
                RitzDenominator::Psi => (lam[j] - psi[j]) / (psi[j] - lam[n - 1]),
            })
            .sum()
    };
    let holds = |r: &BoundReport| !r.applicable || verify_report(r, cfg.tolerance).holds;

    let mut points = Vec::with_capacity(cfg.k_max);
    let mut violation = None;
    for k in 1..=cfg.k_max {
        let angles = run.angles(k, &cfg.tau)?;
        let lz_angles = run.lz_angles(k, &cfg.tau)?;
        let ritz = run.ritz(k, cfg.i)?;
        let lz_ritz = run.lz_ritz(k, cfg.i)?;

        let f = make_shifted_chebyshev::<f64>(lam[cfg.p], lam[n - 1], k)?;
        let fy = apply_filter(spec, &f, &y)?;
        let cheb_psi = ritz_values(spec, fy.orthonormalized()?.basis())?;
        let cheb_angles = bound_multiangle_major(spec, &f, &cfg.tau, &y)?;
        let cheb_ritz = bound_ritz_major(spec, &f, cfg.i, &y)?;

        let pick = |r: &BoundReport| match cfg.rhs {
            RhsForm::Aux => r.bound_aux_sum().unwrap_or_else(|| r.bound_sum()),
            RhsForm::Eliminated => r.bound_sum(),
        };
        let (new_a, lz_a) = (pick(&angles), pick(&lz_angles));
        let (new_r, lz_r) = (pick(&ritz), pick(&lz_ritz));
        let angle_checks = [&angles, &lz_angles, &cheb_angles];
        let ritz_checks = [&ritz, &lz_ritz, &cheb_ritz];
        let angle_violation = !angle_checks.iter().all(|r| holds(r));
        let ritz_violation = !ritz_checks.iter().all(|r| holds(r));
        if violation.is_none() {
            if let Some(r) = angle_checks.iter().chain(&ritz_checks).find(|r| !holds(r)) {
                violation = Some((k, (*r).clone()));
            }
        }
        points.push(Point {
            angle: [angles.measured_sum(), cheb_angles.measured_sum(), new_a, lz_a, new_a, lz_a],
            ritz: [ritz_measure(&run.ritz_values(k)?), ritz_measure(&cheb_psi), cap(new_r), cap(lz_r), new_r, lz_r],
            angle_violation,
            ritz_violation,
        });
    }
    Ok(SampleOutcome { points, redraws, violation })
}

/// CSV column names of the two panels.
pub const ANGLE_HEADER: &str = "k,lanczos_mean,chebyshev_mean,bound_new_mean,bound_lz_mean,violations";
pub const RITZ_HEADER: &str = "k,ritz_lanczos_mean,ritz_chebyshev_mean,ritz_bound_new_mean,ritz_bound_lz_mean,violations";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Panel {
    Angles,
    Ritz,
}

impl Panel {
    pub fn header(self) -> &'static str {
        match self {
            Panel::Angles => ANGLE_HEADER,
            Panel::Ritz => RITZ_HEADER,
        }
    }
}

/// CSV text with 17 significant digits per float.
pub fn to_csv(rows: &[ExperimentRow], panel: Panel) -> String {
    let mut out = String::new();
    out.push_str(panel.header());
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.k, r.measure_mean, r.chebyshev_mean, r.bound_new_mean, r.bound_lz_mean, r.violations
        );
    }
    out
}

/// Parses CSV produced by [`to_csv`]; the raw bound columns are set to the
/// capped ones.
pub fn from_csv(text: &str, panel: Panel) -> Result<Vec<ExperimentRow>> {
    let mut lines = text.lines();
    if lines.next() != Some(panel.header()) {
        return Err(Error::Invalid("unexpected CSV header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 6 {
                return Err(Error::Invalid(format!("expected 6 fields in {l:?}")));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Invalid(format!("bad number {s:?}")));
            let count = |s: &str| s.parse::<usize>().map_err(|_| Error::Invalid(format!("bad count {s:?}")));
            let (new, lz) = (num(f[3])?, num(f[4])?);
            Ok(ExperimentRow {
                k: count(f[0])?,
                measure_mean: num(f[1])?,
                chebyshev_mean: num(f[2])?,
                bound_new_mean: new,
                bound_lz_mean: lz,
                violations: count(f[5])?,
                bound_new_raw_mean: new,
                bound_lz_raw_mean: lz,
            })
        })
        .collect()
}

pub fn to_json(cfg: &ExperimentConfig, result: &ExperimentResult) -> Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        config: &'a ExperimentConfig,
        result: &'a ExperimentResult,
    }
    serde_json::to_string_pretty(&Doc { config: cfg, result }).map_err(|e| Error::Invalid(e.to_string()))
}

pub fn write_csv(rows: &[ExperimentRow], panel: Panel, w: &mut impl io::Write) -> io::Result<()> {
    w.write_all(to_csv(rows, panel).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_eigenvalues_match_layout() {
        let l1 = example_eigenvalues(Example::Example1);
        assert_eq!(l1.len(), 900);
        assert_eq!(&l1[..3], &[2.0, 1.6, 1.4]);
        assert_eq!(l1[3], 1.0 - 1.0 / 900.0);
        let l2 = example_eigenvalues(Example::Example2);
        assert_eq!(l2.len(), 3600);
        assert_eq!(l2[8], 1.35);
        assert_eq!(l2[9], 1.0 - 1.0 / 3600.0);
        assert!(build_example_spectrum(Example::Example2).unwrap().p().unwrap() == 9);
    }

    #[test]
    fn initial_subspace_top_block_is_orthonormal() {
        let mut a = SampleRng::for_stream(1, 2);
        let mut b = SampleRng::for_stream(1, 2);
        let (y, _) = sample_initial_subspace(50, 4, &mut a).unwrap();
        let (z, _) = sample_initial_subspace(50, 4, &mut b).unwrap();
        assert_eq!(y.basis(), z.basis());
        let top = y.basis().submatrix(0, 0, 4, 4);
        assert!(top.orthonormality_residual() < 1e-12);
    }

    #[test]
    fn key_value_config() {
        let text = "# small case\nn = 40\np = 2\neigenvalues = formula:linear,1,0\nleading = 3, 2.5\ntau = 1-2\nk_max = 4\n";
        let cfg = ExperimentConfig::from_key_values(text).unwrap();
        assert_eq!(cfg.n(), 40);
        assert_eq!(&cfg.eigenvalues[..3], &[3.0, 2.5, 1.0 - 2.0 / 39.0]);
        assert_eq!(cfg.i, 2);
        assert_eq!(cfg.k_max, 4);
        assert!(ExperimentConfig::from_key_values("n = 3\np = 1\neigenvalues = 1,2\n").is_err());
        assert!(ExperimentConfig::from_key_values("n = 3\np = 1\neigenvalues = 3,2,1\nbogus = 1\n").is_err());
    }

    #[test]
    fn small_run_is_consistent() {
        let text = "n = 60\np = 2\neigenvalues = formula:linear,1,0\nleading = 2, 1.7\nk_max = 6\n";
        let mut cfg = ExperimentConfig::from_key_values(text).unwrap();
        cfg.samples = 6;
        cfg.seed = 3;
        let res = run_experiment(&cfg).unwrap();
        assert_eq!(res.completed, 6);
        assert_eq!(res.total_violations(), 0);
        let a = &res.angles;
        // 𝒦₁ = 𝒴 and T₀(A)𝒴 = 𝒴.
        assert!((a[0].measure_mean - a[0].chebyshev_mean).abs() < 1e-10 * a[0].measure_mean);
        for w in a.windows(2) {
            assert!(w[1].measure_mean <= w[0].measure_mean);
        }
        for r in a.iter().chain(&res.ritz) {
            assert!(r.bound_new_mean <= r.bound_lz_mean);
        }
        let csv = to_csv(&res.angles, Panel::Angles);
        let back = from_csv(&csv, Panel::Angles).unwrap();
        for (x, y) in back.iter().zip(&res.angles) {
            assert_eq!(x.measure_mean.to_bits(), y.measure_mean.to_bits());
            assert_eq!(x.bound_lz_mean.to_bits(), y.bound_lz_mean.to_bits());
        }
        assert_eq!(to_csv(&[], Panel::Ritz), format!("{RITZ_HEADER}\n"));
    }
}
