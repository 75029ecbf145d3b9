//! The `caralab` command line: `family`, `verify`, `classify`, `derivative`, `suite`.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 invalid input, 3 colligation
//! not isometric, 4 `Y` not a positive contraction, 5 residual or invariant
//! failure, 6 `v_tau` did not converge.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boundary::{self, BoundaryConfig, CarapointVerdict, DerivativeMethod, DerivativeTable, NontangentialGrid};
use crate::error::Error;
use crate::extrapolate::StepSchedule;
use crate::hermitian::DEFAULT_EIGTOL;
use crate::linalg::C64;
use crate::realization::{GeneralizedRealization, ModelSpec, DEFAULT_ISOTOL};
use crate::report::{self, Table};
use crate::scalar_family::{BoundaryPoint, Direction, ScalarInner};
use crate::suite::{self, SuiteConfig, SuiteSummary};

pub const EXIT_NUMERICAL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NOT_ISOMETRIC: u8 = 3;
pub const EXIT_SPECTRUM: u8 = 4;
pub const EXIT_RESIDUAL: u8 = 5;
pub const EXIT_UNCONVERGED: u8 = 6;

#[derive(Debug, Parser)]
#[command(name = "caralab", version, about = "Boundary behavior of Schur-Agler models on the bidisk")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output format of the main report
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write every table as CSV into this directory
    #[arg(long, global = true)]
    pub tables: Option<PathBuf>,
    /// Seed for randomized sampling
    #[arg(long, global = true, env = "CARALAB_SEED", default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_EIGTOL)]
    pub eigtol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_ISOTOL)]
    pub isotol: f64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub residual_tol: f64,
    #[arg(long, global = true, default_value_t = boundary::DEFAULT_CLASS_TOL)]
    pub class_tol: f64,
    /// Aperture constant c >= 1 of the nontangential grid
    #[arg(long, global = true, default_value_t = 2.0)]
    pub aperture: f64,
    /// Refinement levels of the nontangential grid
    #[arg(long, global = true, default_value_t = 12)]
    pub depth: u32,
    /// Ray exponents `first,last`: t = 2^-first .. 2^-last
    #[arg(long, global = true, default_value = "4,20")]
    pub ray: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scalar inner function phi_y: values, model residual, quotients, derivatives
    Family(FamilyArgs),
    /// Check the model identity, contractivity and the Julia ray for a model file
    Verify(ModelArgs),
    /// Classify a model at tau as regular, singular or purely singular
    Classify(ModelArgs),
    /// Directional derivatives at tau, spectral calculus against finite differences
    Derivative(DerivativeArgs),
    /// Randomized suite of generated models
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct TauArgs {
    /// Boundary point as `t1,t2` (real) or `re1,im1,re2,im2`
    #[arg(long, allow_hyphen_values = true, conflicts_with = "tau_angles")]
    pub tau: Option<String>,
    /// Boundary point as angles in turns, `a1,a2` -> (e^{2 pi i a1}, e^{2 pi i a2})
    #[arg(long, allow_hyphen_values = true)]
    pub tau_angles: Option<String>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub y: f64,
    #[command(flatten)]
    pub tau: TauArgs,
    /// Random (lambda, mu) pairs for the model identity
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Model file `{"dim", "tau", "Y", "V"}`
    pub model: PathBuf,
    /// Random (lambda, mu) pairs for the model identity
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    /// Random points for the contractivity scan
    #[arg(long, default_value_t = 2000)]
    pub scan: usize,
}

#[derive(Debug, Args)]
pub struct DerivativeArgs {
    pub model: PathBuf,
    /// Direction as `d1,d2` (real) or `re1,im1,re2,im2`; repeatable. Defaults to the standard pair set.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Vec<String>,
    /// Read `--delta` in rotated coordinates conj(tau_i) delta_i
    #[arg(long)]
    pub rotated: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    #[arg(long, default_value_t = 6)]
    pub max_dim: usize,
}

/// Validated run parameters shared by all subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tables: Option<PathBuf>,
    pub seed: u64,
    pub eigtol: f64,
    pub isotol: f64,
    pub residual_tol: f64,
    pub boundary: BoundaryConfig,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotIsometric { .. } => EXIT_NOT_ISOMETRIC,
            Error::SpectrumOutOfRange { .. } | Error::NotHermitian { .. } => EXIT_SPECTRUM,
            Error::Unconverged => EXIT_UNCONVERGED,
            Error::Shape(_)
            | Error::NonFinite
            | Error::InvalidParameter(_)
            | Error::DegenerateParameter(_)
            | Error::NotOnTorus(..)
            | Error::InadmissibleDirection
            | Error::BadAperture(_) => EXIT_INVALID,
            _ => EXIT_NUMERICAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse_floats(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::invalid(format!("`{p}` is not a number in `{text}`")))
        })
        .collect()
}

/// `a,b` as two reals or `re1,im1,re2,im2` as two complex numbers.
pub fn parse_pair(text: &str) -> CliResult<[C64; 2]> {
    match parse_floats(text)?.as_slice() {
        [a, b] => Ok([C64::new(*a, 0.0), C64::new(*b, 0.0)]),
        [r1, i1, r2, i2] => Ok([C64::new(*r1, *i1), C64::new(*r2, *i2)]),
        _ => Err(CliError::invalid(format!(
            "expected `x,y` or `re1,im1,re2,im2`, got `{text}`"
        ))),
    }
}

fn parse_tau(args: &TauArgs) -> CliResult<BoundaryPoint> {
    if let Some(angles) = &args.tau_angles {
        return match parse_floats(angles)?.as_slice() {
            [a, b] => Ok(BoundaryPoint::from_turns(*a, *b)),
            _ => Err(CliError::invalid("--tau-angles expects `a1,a2`")),
        };
    }
    match &args.tau {
        Some(t) => {
            let [t1, t2] = parse_pair(t)?;
            Ok(BoundaryPoint::new(t1, t2)?)
        }
        None => Ok(BoundaryPoint::one()),
    }
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> CliResult<Self> {
        for (name, tol) in [
            ("eigtol", g.eigtol),
            ("isotol", g.isotol),
            ("residual-tol", g.residual_tol),
            ("class-tol", g.class_tol),
        ] {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CliError::invalid(format!("--{name} must be positive, got {tol}")));
            }
        }
        if !(g.aperture >= 1.0) {
            return Err(Error::BadAperture(g.aperture).into());
        }
        if g.depth == 0 {
            return Err(CliError::invalid("--depth must be at least 1"));
        }
        let ray = match parse_floats(&g.ray)?.as_slice() {
            [a, b] if a.fract() == 0.0 && b.fract() == 0.0 && *a >= 1.0 && b > a && *b <= 40.0 => {
                StepSchedule::new(*a as u32, *b as u32)
            }
            _ => return Err(CliError::invalid("--ray expects integers `first,last` with 1 <= first < last <= 40")),
        };
        Ok(RunConfig {
            format: g.format,
            out: g.out.clone(),
            tables: g.tables.clone(),
            seed: g.seed,
            eigtol: g.eigtol,
            isotol: g.isotol,
            residual_tol: g.residual_tol,
            boundary: BoundaryConfig {
                aperture: g.aperture,
                depth: g.depth,
                ray,
                class_tol: g.class_tol,
                ..BoundaryConfig::default()
            },
        })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// A report plus its tables, ready to be written.
pub struct Output {
    pub json: String,
    /// `(file stem, table)`; the first one is the main CSV output
    pub tables: Vec<(&'static str, Table)>,
    /// one-line human summary for stderr
    pub summary: String,
    pub code: u8,
}

fn output<T: Serialize>(report: &T, tables: Vec<(&'static str, Table)>, summary: String, code: u8) -> Output {
    Output {
        json: report::to_json(report),
        tables,
        summary,
        code,
    }
}

fn load_model(path: &Path, cfg: &RunConfig) -> CliResult<GeneralizedRealization> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    let spec = ModelSpec::from_json(&text)
        .map_err(|e| CliError::invalid(format!("invalid model file {}: {e}", path.display())))?;
    Ok(spec.build(cfg.eigtol, cfg.isotol)?)
}

fn tau_json(tau: &BoundaryPoint) -> [[f64; 2]; 2] {
    let [a, b] = tau.coords();
    [[a.re, a.im], [b.re, b.im]]
}

#[derive(Debug, Serialize)]
pub struct PhiSample {
    pub t: f64,
    pub phi: C64,
}

#[derive(Debug, Serialize)]
pub struct FamilyReport {
    pub y: f64,
    pub tau: [[f64; 2]; 2],
    pub note: Option<&'static str>,
    /// `phi_y((1 - t) tau)`, equal to `1 - t`
    pub ray_values: Vec<PhiSample>,
    pub model_residual_max: Option<f64>,
    pub carapoint: CarapointVerdict,
    pub alpha: f64,
    pub analytic: DerivativeTable,
    pub finite_difference: DerivativeTable,
    pub linearity_defect: f64,
    pub fd_linearity_defect: f64,
}

pub fn cmd_family(args: &FamilyArgs, cfg: &RunConfig) -> CliResult<Output> {
    let tau = parse_tau(&args.tau)?;
    let phi = ScalarInner::new(args.y, tau)?;
    let monomial = args.y == 0.0 || args.y == 1.0;
    let mut rng = cfg.rng();
    let model_residual_max = if monomial {
        None
    } else {
        let mut worst = 0.0f64;
        for _ in 0..args.pairs {
            let (l, m) = (crate::random::bidisk_point(&mut rng), crate::random::bidisk_point(&mut rng));
            worst = worst.max(phi.model_residual(&l, &m)?);
        }
        Some(worst)
    };
    let ray_values = StepSchedule::new(1, 8)
        .steps(1.0)
        .into_iter()
        .map(|t| Ok(PhiSample { t, phi: phi.eval(&tau.ray_point(t))? }))
        .collect::<CliResult<Vec<_>>>()?;
    let grid = NontangentialGrid::build(tau, cfg.boundary.aperture, cfg.boundary.depth)?;
    let verdict = boundary::detect_carapoint(&phi, &grid)?;
    let pairs = boundary::default_pairs(&tau);
    let deltas = boundary::pair_directions(&pairs);
    let analytic = DerivativeTable::build(DerivativeMethod::Analytic, &deltas, |d| phi.directional_derivative(d))?;
    let fd = DerivativeTable::finite_difference(&phi, &tau, &deltas, cfg.boundary.fd)?;
    let report = FamilyReport {
        y: args.y,
        tau: tau_json(&tau),
        note: monomial.then_some("monomial case: phi_y is a coordinate function and the derivative is linear"),
        ray_values,
        model_residual_max,
        alpha: verdict.alpha,
        linearity_defect: analytic.linearity_defect(&pairs).expect("table covers pairs"),
        fd_linearity_defect: fd.linearity_defect(&pairs).expect("table covers pairs"),
        carapoint: verdict,
        analytic,
        finite_difference: fd,
    };
    let ok = report.model_residual_max.map_or(true, |r| r <= cfg.residual_tol);
    let summary = format!(
        "family y={} alpha={:.12} defect={:.12e} residual={}",
        report.y,
        report.alpha,
        report.linearity_defect,
        report.model_residual_max.map_or("n/a".into(), |r| format!("{r:.3e}"))
    );
    let tables = vec![
        ("derivatives", Table::derivatives(&report.analytic)),
        ("derivatives_fd", Table::derivatives(&report.finite_difference)),
        ("quotients", Table::quotients(&report.carapoint.ray)),
    ];
    Ok(output(&report, tables, summary, if ok { 0 } else { EXIT_RESIDUAL }))
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub dim: usize,
    pub tau: [[f64; 2]; 2],
    pub isometry_defect: f64,
    pub model_residual_max: f64,
    pub contractivity_max: f64,
    pub julia_residual_max: f64,
    pub julia: Vec<boundary::JuliaRow>,
    pub residual_tol: f64,
    pub pass: bool,
}

pub fn cmd_verify(args: &ModelArgs, cfg: &RunConfig) -> CliResult<Output> {
    let model = load_model(&args.model, cfg)?;
    let mut rng = cfg.rng();
    let model_residual_max = suite::max_model_residual(&model, args.pairs, &mut rng)?;
    let contractivity_max = if args.scan == 0 {
        0.0
    } else {
        model.pencil().contractivity_scan(args.scan, &mut rng)?.max_norm
    };
    let julia = boundary::julia_quotient_ray(&model, cfg.boundary.ray)?;
    let julia_residual_max = julia.iter().map(|r| r.residual).fold(0.0, f64::max);
    let pass = model_residual_max <= cfg.residual_tol
        && julia_residual_max <= cfg.residual_tol
        && contractivity_max <= 1.0 + 1e-10;
    let report = VerifyReport {
        dim: model.dim(),
        tau: tau_json(&model.tau()),
        isometry_defect: model.colligation().isometry_defect(),
        model_residual_max,
        contractivity_max,
        julia_residual_max,
        julia,
        residual_tol: cfg.residual_tol,
        pass,
    };
    let summary = format!(
        "verify {} residual={:.3e} julia={:.3e} contractivity={:.12} {}",
        args.model.display(),
        model_residual_max,
        julia_residual_max,
        contractivity_max,
        if pass { "PASS" } else { "FAIL" }
    );
    let tables = vec![("julia", Table::julia(&report.julia))];
    Ok(output(&report, tables, summary, if pass { 0 } else { EXIT_RESIDUAL }))
}

pub fn cmd_classify(args: &ModelArgs, cfg: &RunConfig) -> CliResult<Output> {
    let model = load_model(&args.model, cfg)?;
    let report = boundary::classify_model(&model, &cfg.boundary)?;
    let summary = format!(
        "classify {} {:?} alpha={:.12} defect={:.3e} consistent={}",
        args.model.display(),
        report.classification,
        report.alpha,
        report.linearity_defect,
        report.consistent
    );
    let code = if report.consistent { 0 } else { EXIT_RESIDUAL };
    let tables = vec![
        ("derivatives", Table::derivatives(&report.analytic)),
        ("derivatives_fd", Table::derivatives(&report.finite_difference)),
    ];
    Ok(output(&report, tables, summary, code))
}

#[derive(Debug, Serialize)]
pub struct DerivativeRow {
    pub delta: Direction,
    pub analytic: C64,
    pub finite_difference: C64,
    pub fd_error: f64,
    pub gap: f64,
}

#[derive(Debug, Serialize)]
pub struct DerivativeReport {
    pub tau: [[f64; 2]; 2],
    pub phi_tau: C64,
    pub v_tau_norm: f64,
    pub rows: Vec<DerivativeRow>,
    pub max_gap: f64,
    pub linearity_defect: Option<f64>,
    pub tolerance: f64,
}

pub const DERIVATIVE_TOL: f64 = 1e-5;

pub fn cmd_derivative(args: &DerivativeArgs, cfg: &RunConfig) -> CliResult<Output> {
    let model = load_model(&args.model, cfg)?;
    let tau = model.tau();
    let limit = model.v_at_tau(cfg.boundary.ray);
    if !limit.converged {
        return Err(Error::Unconverged.into());
    }
    let pairs = boundary::default_pairs(&tau);
    let deltas = if args.delta.is_empty() {
        boundary::pair_directions(&pairs)
    } else {
        args.delta
            .iter()
            .map(|d| {
                let [a, b] = parse_pair(d)?;
                Ok(if args.rotated {
                    Direction::from_rotated(&tau, [a, b])
                } else {
                    Direction::new(a, b)
                })
            })
            .collect::<CliResult<Vec<_>>>()?
    };
    let mut rows = Vec::with_capacity(deltas.len());
    for d in &deltas {
        let analytic = boundary::derivative_model(&model, &limit, d)?;
        let fd = boundary::derivative_fd(&model, &tau, d, cfg.boundary.fd)?;
        rows.push(DerivativeRow {
            delta: *d,
            analytic,
            finite_difference: fd.value,
            fd_error: fd.error,
            gap: (analytic - fd.value).norm(),
        });
    }
    let max_gap = rows.iter().map(|r| r.gap).fold(0.0, f64::max);
    let table = DerivativeTable {
        entries: rows
            .iter()
            .map(|r| boundary::DerivativeEntry {
                delta: r.delta,
                value: r.analytic,
                method: DerivativeMethod::Analytic,
            })
            .collect(),
    };
    let fd_table = DerivativeTable {
        entries: rows
            .iter()
            .map(|r| boundary::DerivativeEntry {
                delta: r.delta,
                value: r.finite_difference,
                method: DerivativeMethod::FiniteDifference,
            })
            .collect(),
    };
    let report = DerivativeReport {
        tau: tau_json(&tau),
        phi_tau: model.phi_at(&limit.v_tau),
        v_tau_norm: limit.norm(),
        linearity_defect: table.linearity_defect(&pairs),
        rows,
        max_gap,
        tolerance: DERIVATIVE_TOL,
    };
    let summary = format!(
        "derivative {} directions={} max_gap={:.3e}",
        args.model.display(),
        report.rows.len(),
        max_gap
    );
    let code = if max_gap <= DERIVATIVE_TOL { 0 } else { EXIT_RESIDUAL };
    let tables = vec![
        ("derivatives", Table::derivatives(&table)),
        ("derivatives_fd", Table::derivatives(&fd_table)),
    ];
    Ok(output(&report, tables, summary, code))
}

fn suite_csv(summary: &SuiteSummary) -> String {
    let mut out = csv::Writer::from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
        w.write_record(["label", "kind", "dim", "classification", "linearity_defect", "alpha", "v_tau_norm_sq", "pass"])?;
        for o in summary.outcomes.iter().chain(&summary.edge_cases) {
            let class = o
                .classification
                .map(|c| serde_json::to_value(c).expect("enum").as_str().unwrap_or("").to_owned())
                .unwrap_or_default();
            let kind = serde_json::to_value(o.kind).expect("enum").as_str().unwrap_or("").to_owned();
            w.write_record([
                o.label.clone(),
                kind,
                o.dim.to_string(),
                class,
                report::format_float(o.linearity_defect),
                report::format_float(o.alpha),
                report::format_float(o.v_tau_norm_sq),
                o.pass.to_string(),
            ])?;
        }
        Ok(())
    };
    write(&mut out).expect("writing to memory");
    String::from_utf8(out.into_inner().expect("flush")).expect("utf8")
}

pub fn cmd_suite(args: &SuiteArgs, cfg: &RunConfig) -> CliResult<(Output, String)> {
    if args.count == 0 {
        return Err(CliError::invalid("--count must be at least 1"));
    }
    if !(1..=8).contains(&args.max_dim) {
        return Err(CliError::invalid("--max-dim must be between 1 and 8"));
    }
    let scfg = SuiteConfig {
        seed: cfg.seed,
        count: args.count,
        boundary: cfg.boundary.clone(),
        residual_tol: cfg.residual_tol,
        max_dim: args.max_dim,
        ..SuiteConfig::default()
    };
    let summary = suite::run_suite(&scfg)?;
    let line = format!(
        "suite seed={} passed {}/{} edge cases {}/{} disagreements {}",
        summary.seed,
        summary.passed,
        summary.count,
        summary.edge_passed,
        summary.edge_passed + summary.edge_failed,
        summary.disagreements
    );
    let code = if summary.all_passed() { 0 } else { EXIT_RESIDUAL };
    let csv = suite_csv(&summary);
    Ok((output(&summary, Vec::new(), line, code), csv))
}

fn write_to(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    };
    res.map_err(|e| CliError {
        code: EXIT_NUMERICAL,
        message: format!("write failed: {e}"),
    })
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<u8> {
    let cfg = RunConfig::from_args(&cli.global)?;
    let (out, csv_override) = match &cli.command {
        Command::Family(a) => (cmd_family(a, &cfg)?, None),
        Command::Verify(a) => (cmd_verify(a, &cfg)?, None),
        Command::Classify(a) => (cmd_classify(a, &cfg)?, None),
        Command::Derivative(a) => (cmd_derivative(a, &cfg)?, None),
        Command::Suite(a) => {
            let (o, csv) = cmd_suite(a, &cfg)?;
            (o, Some(csv))
        }
    };
    if let Some(dir) = &cfg.tables {
        std::fs::create_dir_all(dir).map_err(|e| CliError::invalid(format!("cannot create {}: {e}", dir.display())))?;
        for (stem, table) in &out.tables {
            write_to(Some(&dir.join(format!("{stem}.csv"))), &table.to_csv_string(), stdout)?;
        }
    }
    let main = match cfg.format {
        Format::Json => out.json.clone(),
        Format::Csv => match (&csv_override, out.tables.first()) {
            (Some(csv), _) => csv.clone(),
            (None, Some((_, t))) => t.to_csv_string(),
            (None, None) => String::new(),
        },
    };
    write_to(cfg.out.as_deref(), &main, stdout)?;
    let _ = writeln!(stderr, "{}", out.summary);
    Ok(out.code)
}

/// Parses `args` and runs the command, writing the report to `stdout` (or
/// `--out`) and diagnostics to `stderr`. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
