//! Randomized verification harness.
//!
//! Models are drawn deterministically from a seed (one ChaCha stream per model)
//! in four kinds, cycling by index:
//!
//! | kind              | `Y` spectrum          | colligation                        | expected class    |
//! |-------------------|-----------------------|------------------------------------|-------------------|
//! | `generic`         | inside `(0, 1)`       | random unitary                     | purely singular   |
//! | `projection`      | `{0, 1}`              | random unitary                     | regular           |
//! | `regular_mixed`   | endpoints and interior| `v_tau` prescribed inside `N`      | regular           |
//! | `singular_mixed`  | endpoints and interior| `v_tau` with both components       | singular          |

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boundary::{self, BoundaryConfig, Classification, NontangentialGrid};
use crate::error::Result;
use crate::hermitian::{operator_norm, PositiveContraction};
use crate::linalg::{self, ComplexMatrix, C64};
use crate::operator_map::OperatorPencil;
use crate::random::{self, SpectrumKind};
use crate::realization::{Colligation, GeneralizedRealization};
use crate::scalar_family::BoundaryPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Generic,
    Projection,
    RegularMixed,
    SingularMixed,
    Edge,
}

impl ModelKind {
    pub fn expected(&self) -> Option<Classification> {
        match self {
            ModelKind::Generic => Some(Classification::PurelySingular),
            ModelKind::Projection | ModelKind::RegularMixed => Some(Classification::Regular),
            ModelKind::SingularMixed => Some(Classification::Singular),
            ModelKind::Edge => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteModel {
    pub label: String,
    pub kind: ModelKind,
    pub expected: Option<Classification>,
    pub model: GeneralizedRealization,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: usize,
    pub boundary: BoundaryConfig,
    /// random `(lambda, mu)` pairs per model for the model identity
    pub pairs: usize,
    /// random pairs per model for the standard-model identity
    pub standard_pairs: usize,
    /// random points per model for the contractivity scan
    pub scan: usize,
    pub residual_tol: f64,
    pub julia_tol: f64,
    pub derivative_tol: f64,
    pub alpha_tol: f64,
    pub max_dim: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            count: 50,
            boundary: BoundaryConfig::default(),
            pairs: 400,
            standard_pairs: 100,
            scan: 200,
            residual_tol: 1e-9,
            julia_tol: 1e-9,
            derivative_tol: 1e-5,
            alpha_tol: 1e-6,
            max_dim: 6,
        }
    }
}

/// Random unit-modulus number.
fn unimodular<R: Rng>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `scale * P g / ||P g||` for a Gaussian `g`.
fn random_in_range<R: Rng>(p: &ComplexMatrix, scale: f64, rng: &mut R) -> Vec<C64> {
    loop {
        let g: Vec<C64> = (0..p.rows()).map(|_| random::complex_normal(rng)).collect();
        let v = p.mul_vec(&g);
        let n = linalg::norm(&v);
        if n > 1e-3 {
            return v.iter().map(|z| z * (scale / n)).collect();
        }
    }
}

/// The `index`-th model of the suite for `seed`.
pub fn generate_model(seed: u64, index: usize, max_dim: usize) -> SuiteModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let kind = [
        ModelKind::Generic,
        ModelKind::Projection,
        ModelKind::RegularMixed,
        ModelKind::SingularMixed,
    ][index % 4];
    let tau = random::torus_point(&mut rng);
    let max_dim = max_dim.max(2);
    let model = match kind {
        ModelKind::Generic | ModelKind::Projection => {
            let n = rng.gen_range(1..=max_dim);
            let spectrum = if kind == ModelKind::Generic {
                SpectrumKind::Interior
            } else {
                SpectrumKind::Projection
            };
            let y = random::positive_contraction(n, spectrum, &mut rng);
            GeneralizedRealization::new(OperatorPencil::new(y, tau), Colligation::random(n, &mut rng))
        }
        _ => {
            let n = rng.gen_range(2..=max_dim);
            let y = random::positive_contraction(n, SpectrumKind::Mixed, &mut rng);
            let proj = y.kernel_projectors();
            let mut v_tau = random_in_range(&proj.kernel(), rng.gen_range(0.5..2.0), &mut rng);
            if kind == ModelKind::SingularMixed {
                let e_part = random_in_range(&proj.e, rng.gen_range(0.5..2.0), &mut rng);
                v_tau = linalg::axpy(C64::new(1.0, 0.0), &e_part, &v_tau);
            }
            let phi_tau = unimodular(&mut rng);
            let col = Colligation::with_boundary_state(&v_tau, phi_tau, &mut rng).expect("unimodular phi(tau)");
            GeneralizedRealization::new(OperatorPencil::new(y, tau), col)
        }
    }
    .expect("dimensions agree");
    SuiteModel {
        label: format!("model-{index:03}"),
        kind,
        expected: kind.expected(),
        model,
    }
}

pub fn generate_models(seed: u64, count: usize, max_dim: usize) -> Vec<SuiteModel> {
    (0..count).map(|i| generate_model(seed, i, max_dim)).collect()
}

fn edge(label: &str, y: &[f64], col: Colligation, expected: Classification) -> SuiteModel {
    let pencil = OperatorPencil::new(PositiveContraction::diagonal(y).expect("valid spectrum"), BoundaryPoint::one());
    SuiteModel {
        label: label.into(),
        kind: ModelKind::Edge,
        expected: Some(expected),
        model: GeneralizedRealization::new(pencil, col).expect("dimensions agree"),
    }
}

pub fn swap_colligation() -> Colligation {
    Colligation::unchecked(&ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2")).expect("square")
}

/// The constructed boundary cases at `tau = (1, 1)`:
/// `Y = 0.5` with the swap colligation, `Y = diag(1, 0)`, and `Y = diag(1, 0.5)`
/// with `v_tau = (1, 0)` and `v_tau = (1, 1)`.
pub fn edge_cases() -> Vec<SuiteModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xED6E);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut prescribed = |v: &[C64]| Colligation::with_boundary_state(v, one, &mut rng).expect("unimodular");
    let projection = prescribed(&[C64::new(0.6, 0.0), C64::new(0.0, -0.8)]);
    let mixed_regular = prescribed(&[one, zero]);
    let mixed_singular = prescribed(&[one, one]);
    vec![
        edge("scalar-half-swap", &[0.5], swap_colligation(), Classification::PurelySingular),
        edge("projection-diag-1-0", &[1.0, 0.0], projection, Classification::Regular),
        edge("mixed-diag-1-half-regular", &[1.0, 0.5], mixed_regular, Classification::Regular),
        edge("mixed-diag-1-half-singular", &[1.0, 0.5], mixed_singular, Classification::Singular),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &'static str, value: f64, tol: f64) -> Self {
        Check {
            name,
            value,
            tol,
            pass: value <= tol,
        }
    }

    fn holds(name: &'static str, value: f64, pass: bool) -> Self {
        Check {
            name,
            value,
            tol: f64::NAN,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelOutcome {
    pub label: String,
    pub kind: ModelKind,
    pub dim: usize,
    pub classification: Option<Classification>,
    pub expected: Option<Classification>,
    pub linearity_defect: f64,
    pub alpha: f64,
    pub v_tau_norm_sq: f64,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    pub pass: bool,
}

/// Largest `max_i ||U_i(lambda) v_lambda|| / ||v_lambda||` over a grid.
pub fn standard_bound_ratio(model: &GeneralizedRealization, grid: &NontangentialGrid) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in grid.points() {
        let s = boundary::derive_standard_model(model, &p.lambda)?;
        let nv = linalg::norm(&s.v);
        if nv > 0.0 {
            worst = worst.max(linalg::norm(&s.first).max(linalg::norm(&s.second)) / nv);
        }
    }
    Ok(worst)
}

/// `max |1 - conj(phi(mu)) phi(lambda) - <(1 - I(mu)* I(lambda)) v_lambda, v_mu>|` over random pairs.
pub fn max_model_residual<R: Rng>(model: &GeneralizedRealization, pairs: usize, rng: &mut R) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let (l, m) = (random::bidisk_point(rng), random::bidisk_point(rng));
        worst = worst.max(model.model_residual(&l, &m)?);
    }
    Ok(worst)
}

pub fn max_standard_residual<R: Rng>(model: &GeneralizedRealization, pairs: usize, rng: &mut R) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let (l, m) = (random::bidisk_point(rng), random::bidisk_point(rng));
        worst = worst.max(boundary::standard_model_residual(model, &l, &m)?);
    }
    Ok(worst)
}

fn scan_norm<R: Rng>(model: &GeneralizedRealization, n: usize, rng: &mut R) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..n {
        worst = worst.max(operator_norm(&model.pencil().eval(&random::bidisk_point(rng))?)?);
    }
    Ok(worst)
}

/// `max |D(s delta) - s D(delta)|` for `s` in `{0.5, 2}`, both derivative methods.
fn homogeneity_gap(model: &GeneralizedRealization, cfg: &BoundaryConfig) -> Result<f64> {
    let tau = model.tau();
    let limit = model.v_at_tau(cfg.ray);
    let mut worst = 0.0f64;
    for (a, _) in boundary::default_pairs(&tau).iter().take(2) {
        let base_m = boundary::derivative_model(model, &limit, a)?;
        let base_f = boundary::derivative_fd(model, &tau, a, cfg.fd)?.value;
        for s in [0.5, 2.0] {
            let d = a.scale(s);
            let m = boundary::derivative_model(model, &limit, &d)?;
            let f = boundary::derivative_fd(model, &tau, &d, cfg.fd)?.value;
            worst = worst.max((m - base_m * s).norm()).max((f - base_f * s).norm());
        }
    }
    Ok(worst)
}

/// Runs every invariant on one model.
pub fn check_model<R: Rng>(sm: &SuiteModel, cfg: &SuiteConfig, rng: &mut R) -> ModelOutcome {
    let mut outcome = ModelOutcome {
        label: sm.label.clone(),
        kind: sm.kind,
        dim: sm.model.dim(),
        classification: None,
        expected: sm.expected,
        linearity_defect: f64::NAN,
        alpha: f64::NAN,
        v_tau_norm_sq: f64::NAN,
        checks: Vec::new(),
        error: None,
        pass: false,
    };
    if let Err(e) = run_checks(sm, cfg, rng, &mut outcome) {
        outcome.error = Some(e.to_string());
    }
    outcome.pass = outcome.error.is_none() && outcome.checks.iter().all(|c| c.pass);
    outcome
}

fn run_checks<R: Rng>(sm: &SuiteModel, cfg: &SuiteConfig, rng: &mut R, out: &mut ModelOutcome) -> Result<()> {
    let model = &sm.model;
    let b = &cfg.boundary;
    let checks = &mut out.checks;
    checks.push(Check::at_most(
        "isometry_defect",
        model.colligation().isometry_defect(),
        crate::realization::DEFAULT_ISOTOL,
    ));
    checks.push(Check::at_most(
        "model_residual",
        max_model_residual(model, cfg.pairs, rng)?,
        cfg.residual_tol,
    ));
    checks.push(Check::at_most("contractivity", scan_norm(model, cfg.scan, rng)?, 1.0 + 1e-10));

    let report = boundary::classify_model(model, b)?;
    out.classification = Some(report.classification);
    out.linearity_defect = report.linearity_defect;
    out.alpha = report.alpha;
    out.v_tau_norm_sq = report.v_tau_norm * report.v_tau_norm;

    let julia = boundary::julia_quotient_ray(model, b.ray)?;
    let julia_max = julia.iter().map(|r| r.residual).fold(0.0, f64::max);
    checks.push(Check::at_most("julia_residual", julia_max, cfg.julia_tol));
    checks.push(Check::holds("carapoint", report.alpha, report.carapoint));
    checks.push(Check::at_most(
        "alpha_vs_norm",
        (report.alpha - out.v_tau_norm_sq).abs(),
        cfg.alpha_tol,
    ));
    checks.push(Check::holds("alpha_positive", report.alpha, report.alpha > 0.0));

    let gap = report
        .analytic
        .entries
        .iter()
        .zip(&report.finite_difference.entries)
        .map(|(m, f)| (m.value - f.value).norm())
        .fold(0.0, f64::max);
    checks.push(Check::at_most("derivative_agreement", gap, cfg.derivative_tol));
    checks.push(Check::holds(
        "derivative_count",
        report.analytic.entries.len() as f64,
        report.analytic.entries.len() >= 10,
    ));
    checks.push(Check::at_most("homogeneity", homogeneity_gap(model, b)?, cfg.derivative_tol));

    let class = report.classification;
    let defect = report.linearity_defect;
    let consistent = boundary::classification_consistent(class, defect)
        && (!class.is_singular() || defect > boundary::NONLINEAR_DEFECT_TOL);
    checks.push(Check::holds("classification_vs_defect", defect, consistent));
    if let Some(expected) = sm.expected {
        checks.push(Check::holds("expected_class", defect, class == expected));
    }

    checks.push(Check::at_most(
        "standard_residual",
        max_standard_residual(model, cfg.standard_pairs, rng)?,
        cfg.residual_tol,
    ));
    let grid = NontangentialGrid::build(model.tau(), b.aperture, b.depth)?;
    checks.push(Check::at_most(
        "standard_bound",
        standard_bound_ratio(model, &grid)?,
        b.aperture + 1.0,
    ));
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failed: usize,
    pub edge_passed: usize,
    pub edge_failed: usize,
    /// models whose classification disagrees with the linearity defect
    pub disagreements: usize,
    pub outcomes: Vec<ModelOutcome>,
    pub edge_cases: Vec<ModelOutcome>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.edge_failed == 0
    }
}

fn disagrees(o: &ModelOutcome) -> bool {
    o.checks
        .iter()
        .any(|c| c.name == "classification_vs_defect" && !c.pass)
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    if cfg.count == 0 {
        return Err(crate::error::Error::InvalidParameter("count must be at least 1".into()));
    }
    let run = |models: Vec<SuiteModel>, stream: u64| -> Vec<ModelOutcome> {
        models
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0000_0000 ^ stream);
                rng.set_stream(i as u64);
                check_model(m, cfg, &mut rng)
            })
            .collect()
    };
    let outcomes = run(generate_models(cfg.seed, cfg.count, cfg.max_dim), 0);
    let edge = run(edge_cases(), 1);
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let edge_passed = edge.iter().filter(|o| o.pass).count();
    Ok(SuiteSummary {
        seed: cfg.seed,
        count: cfg.count,
        passed,
        failed: outcomes.len() - passed,
        edge_passed,
        edge_failed: edge.len() - edge_passed,
        disagreements: outcomes.iter().chain(&edge).filter(|o| disagrees(o)).count(),
        outcomes,
        edge_cases: edge,
    })
}
