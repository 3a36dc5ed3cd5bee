//! Command-line front end: `experiment`, `angles`, `bounds` and `lanczos`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, verify_report, BoundReport, ChebyParams, LanczosRun};
use crate::eigensolvers::Spectrum;
use crate::error::{Error, Result};
use crate::experiment::{self, Aggregation, ExperimentConfig, Panel, RhsForm, RitzDenominator};
use crate::filters::make_shifted_chebyshev;
use crate::linalg::Matrix;
use crate::majorization::Tolerance;
use crate::rng::SampleRng;
use crate::subspaces::{principal_angles, principal_angles_cosine, principal_angles_tangent, IndexSet, Subspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "clusterbounds", version, about = "Block eigensolver convergence bounds: evaluation and experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo comparison of block Lanczos and Chebyshev iterates with their bounds.
    Experiment(ExperimentArgs),
    /// Principal angles between two subspaces by three routes.
    Angles(AnglesArgs),
    /// Evaluate every bound on one sampled initial subspace.
    Bounds(BoundsArgs),
    /// Block Lanczos Ritz values against the exact eigenvalues.
    Lanczos(LanczosArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleArg {
    Example1,
    Example2,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AggArg {
    Mean,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DenominatorArg {
    Lam1,
    Psi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChebyArg {
    Eigen,
    Ritz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RhsArg {
    Aux,
    Eliminated,
}

/// Test problem selection shared by all problem-based subcommands.
#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(value_enum)]
    pub which: ExampleArg,
    /// key=value file for `custom`.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Angle index set, e.g. `1,2,3` or `3-8`.
    #[arg(long)]
    pub tau: Option<String>,
    /// Number of leading Ritz values.
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long, value_enum, default_value_t = ChebyArg::Eigen)]
    pub cheby_params: ChebyArg,
    /// Relative tolerance for bound verification.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long, value_enum, default_value_t = AggArg::Mean)]
    pub agg: AggArg,
    /// Directory for `angles.csv` and `ritz.csv`, or the JSON file path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = DenominatorArg::Lam1)]
    pub ritz_denominator: DenominatorArg,
    /// Report the Ritz bounds without capping them at `i`.
    #[arg(long)]
    pub no_cap: bool,
    #[arg(long, value_enum, default_value_t = RhsArg::Aux)]
    pub rhs: RhsArg,
}

#[derive(Debug, Args)]
pub struct AnglesArgs {
    /// Text matrix (one row per line) spanning the first subspace.
    #[arg(long, requires = "v")]
    pub u: Option<PathBuf>,
    #[arg(long, requires = "u")]
    pub v: Option<PathBuf>,
    /// Ambient dimension of a random pair, when no files are given.
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub dim_u: usize,
    #[arg(long, default_value_t = 4)]
    pub dim_v: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Iteration count `k`.
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// Sample index whose initial subspace is used.
    #[arg(long, default_value_t = 0)]
    pub sample: usize,
}

#[derive(Debug, Args)]
pub struct LanczosArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 15)]
    pub kmax: usize,
    #[arg(long, default_value_t = 0)]
    pub sample: usize,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let mut out = String::new();
    let code = match execute(&cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if is_config_error(&e) {
                EXIT_CONFIG
            } else {
                EXIT_RUNTIME
            }
        }
    };
    print!("{out}");
    code
}

fn is_config_error(e: &Error) -> bool {
    matches!(e, Error::Invalid(_) | Error::IndexOutOfRange(_) | Error::GapViolation(_) | Error::DegenerateInterval(..))
}

/// Runs one command, appending standard output to `out`; returns the exit code.
pub fn execute(cmd: &Command, out: &mut String) -> Result<i32> {
    match cmd {
        Command::Experiment(a) => run_experiment_cmd(a, out),
        Command::Angles(a) => run_angles(a, out),
        Command::Bounds(a) => run_bounds(a, out),
        Command::Lanczos(a) => run_lanczos(a, out),
    }
}

fn cheby(a: ChebyArg) -> ChebyParams {
    match a {
        ChebyArg::Eigen => ChebyParams::Eigen,
        ChebyArg::Ritz => ChebyParams::Ritz,
    }
}

fn problem_config(p: &ProblemArgs) -> Result<ExperimentConfig> {
    let mut cfg = match (p.which, &p.config) {
        (ExampleArg::Example1, None) => ExperimentConfig::example1(),
        (ExampleArg::Example2, None) => ExperimentConfig::example2(),
        (ExampleArg::Custom, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            ExperimentConfig::from_key_values(&text)?
        }
        (ExampleArg::Custom, None) => return Err(Error::Invalid("custom needs --config PATH".into())),
        (_, Some(_)) => return Err(Error::Invalid("--config only applies to custom".into())),
    };
    cfg.seed = p.seed;
    if let Some(t) = &p.tau {
        cfg.tau = t.parse::<IndexSet>()?;
    }
    if let Some(i) = p.i {
        cfg.i = i;
    }
    cfg.cheby_params = cheby(p.cheby_params);
    if let Some(tol) = p.tol {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::Invalid(format!("--tol {tol} must be finite and nonnegative")));
        }
        cfg.tolerance = Tolerance::new(tol, bounds::BOUND_ABS_TOL);
    }
    Ok(cfg)
}

fn run_experiment_cmd(a: &ExperimentArgs, out: &mut String) -> Result<i32> {
    let mut cfg = problem_config(&a.problem)?;
    cfg.samples = a.samples;
    if let Some(k) = a.kmax {
        cfg.k_max = k;
    }
    cfg.aggregation = match a.agg {
        AggArg::Mean => Aggregation::Mean,
        AggArg::Max => Aggregation::Max,
    };
    cfg.ritz_denominator = match a.ritz_denominator {
        DenominatorArg::Lam1 => RitzDenominator::Lam1,
        DenominatorArg::Psi => RitzDenominator::Psi,
    };
    cfg.cap = !a.no_cap;
    cfg.rhs = match a.rhs {
        RhsArg::Aux => RhsForm::Aux,
        RhsArg::Eliminated => RhsForm::Eliminated,
    };
    cfg.validate()?;
    let res = experiment::run_experiment(&cfg)?;
    for (s, msg) in &res.failed {
        eprintln!("sample {s} skipped: {msg}");
    }
    if res.redraws > 0 {
        eprintln!("{} initial blocks redrawn", res.redraws);
    }
    let angles = experiment::to_csv(&res.angles, Panel::Angles);
    let ritz = experiment::to_csv(&res.ritz, Panel::Ritz);
    match (a.problem.format, &a.out) {
        (Format::Csv, None) => {
            out.push_str(&angles);
            out.push('\n');
            out.push_str(&ritz);
        }
        (Format::Csv, Some(dir)) => {
            fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
            write_file(&dir.join("angles.csv"), &angles)?;
            write_file(&dir.join("ritz.csv"), &ritz)?;
        }
        (Format::Json, None) => {
            out.push_str(&experiment::to_json(&cfg, &res)?);
            out.push('\n');
        }
        (Format::Json, Some(path)) => write_file(path, &experiment::to_json(&cfg, &res)?)?,
    }
    let bad = res.total_violations();
    if bad > 0 {
        if let Some((s, k, r)) = &res.first_violation {
            let v = verify_report(r, cfg.tolerance);
            eprintln!("violation: {} at sample {s}, k = {k}, excess {:e}", r.name, v.worst_violation);
        }
        eprintln!("{bad} sample-steps violate a bound");
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Invalid(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

/// Reads a real matrix written one row per line, entries separated by
/// whitespace or commas.
pub fn read_matrix(text: &str) -> Result<Matrix<f64>> {
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<f64>().map_err(|_| Error::Invalid(format!("not a number: {s:?}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Invalid("matrix rows are empty or ragged".into()));
    }
    Ok(Matrix::from_rows(&rows))
}

#[derive(Serialize)]
struct AngleRow {
    j: usize,
    cosine_route: f64,
    combined: f64,
    tangent_route: Option<f64>,
}

fn run_angles(a: &AnglesArgs, out: &mut String) -> Result<i32> {
    let (u, v) = match (&a.u, &a.v) {
        (Some(pu), Some(pv)) => {
            let load = |p: &PathBuf| -> Result<Matrix<f64>> { read_matrix(&fs::read_to_string(p).map_err(|e| io_error(p, e))?) };
            (load(pu)?, load(pv)?)
        }
        _ => {
            if a.dim_u == 0 || a.dim_u > a.dim_v || a.dim_v > a.n {
                return Err(Error::Invalid("need 1 ≤ dim-u ≤ dim-v ≤ n".into()));
            }
            let mut rng = SampleRng::for_stream(a.seed, 0);
            (rng.gaussian_matrix(a.n, a.dim_u), rng.gaussian_matrix(a.n, a.dim_v))
        }
    };
    let (u, v) = (Subspace::new(u)?, Subspace::new(v)?);
    let cos = principal_angles_cosine(&u, &v)?;
    let comb = principal_angles(&u, &v)?;
    let tan = if u.dim() <= v.ambient_dim() - v.dim() {
        let v = v.orthonormalized()?;
        Some(principal_angles_tangent(u.basis(), &v, &v.complement()?)?)
    } else {
        None
    };
    let rows: Vec<AngleRow> = (0..u.dim())
        .map(|j| AngleRow {
            j: j + 1,
            cosine_route: cos.angles().values()[j],
            combined: comb.angles().values()[j],
            tangent_route: tan.as_ref().map(|t| t.values()[j].atan()),
        })
        .collect();
    match a.format {
        Format::Csv => {
            out.push_str("j,cosine_route,combined,tangent_route\n");
            for r in &rows {
                let t = r.tangent_route.map(|t| format!("{t:.16e}")).unwrap_or_default();
                let _ = writeln!(out, "{},{:.16e},{:.16e},{}", r.j, r.cosine_route, r.combined, t);
            }
        }
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(&rows).map_err(|e| Error::Invalid(e.to_string()))?);
            out.push('\n');
        }
    }
    Ok(EXIT_OK)
}

fn problem_setup(p: &ProblemArgs, sample: usize) -> Result<(ExperimentConfig, Spectrum<f64>, Subspace<f64>)> {
    let cfg = problem_config(p)?;
    cfg.validate()?;
    let spec = Spectrum::diagonal(cfg.eigenvalues.clone())?.with_p(cfg.p)?;
    let mut rng = SampleRng::for_stream(cfg.seed, sample as u64);
    let (y, _) = experiment::sample_initial_subspace(cfg.n(), cfg.p, &mut rng)?;
    Ok((cfg, spec, y))
}

/// All evaluators that apply to a Hermitian spectrum, a start `y` and `k` steps.
pub fn evaluate_all(spec: &Spectrum<f64>, y: &Subspace<f64>, k: usize, tau: &IndexSet, i: usize, params: ChebyParams) -> Result<Vec<BoundReport>> {
    let p = spec.p()?;
    let n = spec.n();
    let f = make_shifted_chebyshev::<f64>(spec.lambda(p + 1), spec.lambda(n), k)?;
    let run = LanczosRun::new(spec, y, k, params)?;
    let mut reports = vec![
        bounds::bound_filtered_tangent(spec, &f, y)?,
        bounds::bound_chebyshev_tangent(spec, y, k)?,
        bounds::bound_aux_subspace_tangent(spec, &f, y)?,
        bounds::bound_ritz_by_aux_angle(spec, &f, y)?,
        bounds::bound_filtered_ritz(spec, &f, y)?,
        bounds::bound_chebyshev_ritz(spec, y, k)?,
        bounds::bound_stationary_major(spec, y, k)?,
        bounds::bound_multiangle_major(spec, &f, tau, y)?,
        bounds::bound_aux_subspace_major(spec, &f, i, y)?,
        bounds::bound_ritz_by_aux_angles(spec, &f, i, y)?,
        bounds::bound_ritz_major(spec, &f, i, y)?,
        run.angles(k, tau)?,
        run.ritz(k, i)?,
        run.lz_angles(k, tau)?,
        run.lz_ritz(k, i)?,
    ];
    if spec.lambda(p).abs() > spec.lambda(p + 1).abs().max(spec.lambda(n).abs()) {
        reports.insert(0, bounds::bound_power_tangent(spec, y, k.saturating_sub(1))?);
    }
    Ok(reports)
}

#[derive(Serialize)]
struct ReportLine<'a> {
    report: &'a BoundReport,
    holds: bool,
    worst_violation: f64,
}

fn run_bounds(a: &BoundsArgs, out: &mut String) -> Result<i32> {
    if a.k == 0 {
        return Err(Error::Invalid("--k must be at least 1".into()));
    }
    let (cfg, spec, y) = problem_setup(&a.problem, a.sample)?;
    let reports = evaluate_all(&spec, &y, a.k, &cfg.tau, cfg.i, cfg.cheby_params)?;
    let lines: Vec<ReportLine> = reports
        .iter()
        .map(|r| {
            let v = verify_report(r, cfg.tolerance);
            ReportLine { report: r, holds: !r.applicable || v.holds, worst_violation: v.worst_violation }
        })
        .collect();
    match a.problem.format {
        Format::Csv => {
            out.push_str("name,applicable,holds,worst_violation,measured_sum,bound_aux_sum,bound_sum\n");
            for l in &lines {
                let r = l.report;
                let aux = r.bound_aux_sum().map(|x| format!("{x:.16e}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{:.16e},{:.16e},{},{:.16e}",
                    r.name,
                    r.applicable,
                    l.holds,
                    l.worst_violation,
                    r.measured_sum(),
                    aux,
                    r.bound_sum()
                );
            }
        }
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(&lines).map_err(|e| Error::Invalid(e.to_string()))?);
            out.push('\n');
        }
    }
    Ok(if lines.iter().all(|l| l.holds) { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Serialize)]
struct RitzLine {
    k: usize,
    dim: usize,
    j: usize,
    ritz_value: f64,
    eigenvalue: f64,
    error: f64,
}

fn run_lanczos(a: &LanczosArgs, out: &mut String) -> Result<i32> {
    if a.kmax == 0 {
        return Err(Error::Invalid("--kmax must be at least 1".into()));
    }
    let (cfg, spec, y) = problem_setup(&a.problem, a.sample)?;
    let run = LanczosRun::new(&spec, &y, a.kmax, cfg.cheby_params)?;
    let lam = run.eigenvalues();
    let mut lines = Vec::new();
    for k in 1..=a.kmax {
        let psi = run.ritz_values(k)?;
        let dim = run.subspace(k)?.dim();
        for (j, &v) in psi.iter().take(cfg.p).enumerate() {
            lines.push(RitzLine { k, dim, j: j + 1, ritz_value: v, eigenvalue: lam[j], error: lam[j] - v });
        }
    }
    match a.problem.format {
        Format::Csv => {
            out.push_str("k,dim,j,ritz_value,eigenvalue,error\n");
            for l in &lines {
                let _ = writeln!(out, "{},{},{},{:.16e},{:.16e},{:.16e}", l.k, l.dim, l.j, l.ritz_value, l.eigenvalue, l.error);
            }
        }
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(&lines).map_err(|e| Error::Invalid(e.to_string()))?);
            out.push('\n');
        }
    }
    Ok(EXIT_OK)
}
