//! Boundary analysis at a point `tau` of the torus: nontangential grids,
//! Caratheodory quotients, directional derivatives computed two ways, the
//! derived standard model and the regular / singular classification of a
//! generalized model.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extrapolate::{self, Limit, StepSchedule};
use crate::hermitian::KernelProjectors;
use crate::linalg::{self, ComplexMatrix, C64};
use crate::precise;
use crate::realization::{GeneralizedRealization, TauLimit};
use crate::scalar_family::{self, BoundaryPoint, Direction, DiskPoint, ScalarInner};

/// Quotients at or above this value count as unbounded.
pub const UNBOUNDED_QUOTIENT: f64 = 1e6;
/// Default threshold on `||E v_tau||` below which a model is regular.
pub const DEFAULT_CLASS_TOL: f64 = 1e-7;
/// `||E v_tau||` between the class tolerance and this value is indeterminate.
pub const INDETERMINATE_UPPER: f64 = 1e-3;
/// A directional derivative is linear when the defect is at most this.
pub const LINEAR_DEFECT_TOL: f64 = 1e-6;
/// A singular model is expected to show a defect above this.
pub const NONLINEAR_DEFECT_TOL: f64 = 1e-3;

const APERTURE_SLACK: f64 = 1e-12;

/// Anything that can be evaluated on the bidisk.
pub trait SchurFunction {
    fn eval(&self, lambda: &DiskPoint) -> Result<C64>;
}

impl SchurFunction for ScalarInner {
    fn eval(&self, lambda: &DiskPoint) -> Result<C64> {
        ScalarInner::eval(self, lambda)
    }
}

impl SchurFunction for GeneralizedRealization {
    fn eval(&self, lambda: &DiskPoint) -> Result<C64> {
        self.phi(lambda)
    }
}

impl<F> SchurFunction for F
where
    F: Fn(&DiskPoint) -> Result<C64>,
{
    fn eval(&self, lambda: &DiskPoint) -> Result<C64> {
        self(lambda)
    }
}

/// `||tau - lambda||_inf / (1 - ||lambda||_inf)`, the smallest aperture containing `lambda`.
pub fn aperture_ratio(tau: &BoundaryPoint, lambda: &DiskPoint) -> f64 {
    let t = tau.coords();
    let dist = (t[0] - lambda.0[0]).norm().max((t[1] - lambda.0[1]).norm());
    let room = 1.0 - lambda.sup_norm();
    if room <= 0.0 {
        f64::INFINITY
    } else {
        dist / room
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub lambda: DiskPoint,
    /// refinement level `k`, the point sits at distance about `2^-k` from `tau`;
    /// zero for randomly sampled points
    pub level: u32,
    pub on_ray: bool,
}

/// Points of the bidisk inside the cone `||tau - lambda|| <= c (1 - ||lambda||)`.
#[derive(Debug, Clone)]
pub struct NontangentialGrid {
    tau: BoundaryPoint,
    aperture: f64,
    depth: u32,
    points: Vec<GridPoint>,
}

impl NontangentialGrid {
    /// Ray points `(1 - 2^-k) tau` for `k = 1..=depth`, plus off-ray points
    /// `tau_i (1 - 2^-k z_i)` for a fixed fan of complex offsets `z_i`, kept
    /// only when they fall inside the cone.
    pub fn build(tau: BoundaryPoint, c: f64, depth: u32) -> Result<Self> {
        if !(c >= 1.0) {
            return Err(Error::BadAperture(c));
        }
        if depth == 0 {
            return Err(Error::InvalidParameter("grid depth must be at least 1".into()));
        }
        let mut offsets = Vec::new();
        for rho in [0.5, 1.0, 2.0, 4.0] {
            for theta in [0.0, PI / 4.0, -PI / 4.0, PI / 3.0, -PI / 3.0] {
                offsets.push(C64::from_polar(rho, theta));
            }
        }
        let mut points = Vec::new();
        for k in 1..=depth {
            let s = 0.5f64.powi(k as i32);
            points.push(GridPoint {
                lambda: tau.ray_point(s),
                level: k,
                on_ray: true,
            });
            for z1 in &offsets {
                for z2 in &offsets {
                    if z1 == z2 && z1.im == 0.0 && z1.re == 1.0 {
                        continue;
                    }
                    let lambda = tau.point_with_gaps(z1 * s, z2 * s);
                    if lambda.is_interior() && aperture_ratio(&tau, &lambda) <= c * (1.0 + APERTURE_SLACK) {
                        points.push(GridPoint {
                            lambda,
                            level: k,
                            on_ray: false,
                        });
                    }
                }
            }
        }
        Ok(NontangentialGrid {
            tau,
            aperture: c,
            depth,
            points,
        })
    }

    /// `n` random points of the cone with `1 - ||lambda||_inf` between `1e-6` and `0.5 / c`.
    ///
    /// Coordinates are drawn as `tau_i (1 - r_i) e^{i theta_i}` with the smallest
    /// `r_i` equal to the room `r`, `r_i <= c r`, and `theta_i` inside the arc
    /// where `|1 - (1 - r_i) e^{i theta_i}| <= c r`.
    pub fn sample<R: Rng>(tau: BoundaryPoint, c: f64, n: usize, rng: &mut R) -> Result<Self> {
        if !(c >= 1.0) {
            return Err(Error::BadAperture(c));
        }
        let t = tau.coords();
        let mut points = Vec::with_capacity(n);
        while points.len() < n {
            let r = 10f64.powf(-rng.gen_range(0.3..6.0)) / c;
            let reach = c * r;
            let tight = rng.gen_range(0..2);
            let mut coord = |i: usize| {
                let ri = if i == tight { r } else { rng.gen_range(r..=reach) };
                let rho = 1.0 - ri;
                let cos_max = ((1.0 + rho * rho - reach * reach) / (2.0 * rho)).clamp(-1.0, 1.0);
                let theta_max = cos_max.acos();
                let theta = if theta_max > 0.0 {
                    rng.gen_range(-theta_max..=theta_max)
                } else {
                    0.0
                };
                t[i] * C64::from_polar(rho, theta)
            };
            let lambda = DiskPoint::new(coord(0), coord(1));
            if lambda.is_interior() && aperture_ratio(&tau, &lambda) <= c * (1.0 + APERTURE_SLACK) {
                points.push(GridPoint {
                    lambda,
                    level: 0,
                    on_ray: false,
                });
            }
        }
        Ok(NontangentialGrid {
            tau,
            aperture: c,
            depth: 0,
            points,
        })
    }

    pub fn tau(&self) -> BoundaryPoint {
        self.tau
    }

    pub fn aperture(&self) -> f64 {
        self.aperture
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, lambda: &DiskPoint) -> bool {
        lambda.is_interior() && aperture_ratio(&self.tau, lambda) <= self.aperture * (1.0 + APERTURE_SLACK)
    }

    fn level(&self, k: u32) -> impl Iterator<Item = &GridPoint> {
        self.points.iter().filter(move |p| p.level == k)
    }
}

/// `(1 - |phi(lambda)|) / (1 - ||lambda||_inf)`
pub fn cara_quotient(phi: &impl SchurFunction, lambda: &DiskPoint) -> Result<f64> {
    let value = phi.eval(lambda)?;
    Ok(((1.0 - value.norm()) / (1.0 - lambda.sup_norm())).max(0.0))
}

/// Ray steps used to extrapolate the Caratheodory quotient and `phi(tau)`.
pub const RAY_EXTRAPOLATION: StepSchedule = StepSchedule::new(10, 24);

#[derive(Debug, Clone, Serialize)]
pub struct CarapointVerdict {
    pub carapoint: bool,
    /// extrapolated ray limit of the quotient (infinite when unbounded)
    pub alpha: f64,
    pub alpha_error: f64,
    pub grid_min: f64,
    pub grid_max: f64,
    /// `(t, quotient)` along `(1 - t) tau`
    pub ray: Vec<(f64, f64)>,
}

/// Decides whether `grid.tau()` is a carapoint of `phi`.
///
/// The quotient must stay below [`UNBOUNDED_QUOTIENT`] on the grid and must not
/// grow like `1 / t` along the ray; `alpha` is its extrapolated ray limit.
pub fn detect_carapoint(phi: &impl SchurFunction, grid: &NontangentialGrid) -> Result<CarapointVerdict> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty grid".into()));
    }
    let (mut grid_min, mut grid_max) = (f64::INFINITY, 0.0f64);
    for p in grid.points() {
        let q = cara_quotient(phi, &p.lambda)?;
        grid_min = grid_min.min(q);
        grid_max = grid_max.max(q);
    }
    let tau = grid.tau();
    let mut ray = Vec::new();
    for t in RAY_EXTRAPOLATION.steps(1.0) {
        ray.push((t, cara_quotient(phi, &tau.ray_point(t))?));
    }
    // an unbounded quotient doubles with every halving of t
    let growing = ray
        .windows(2)
        .rev()
        .take(4)
        .all(|w| w[0].1 > 0.0 && w[1].1 / w[0].1 > 1.5);
    let bounded = grid_max < UNBOUNDED_QUOTIENT && ray.iter().all(|r| r.1 < UNBOUNDED_QUOTIENT) && !growing;
    let (alpha, alpha_error) = if bounded {
        let samples: Vec<C64> = ray.iter().map(|r| C64::new(r.1, 0.0)).collect();
        let lim = extrapolate::richardson(&samples)?;
        (lim.value.re.max(0.0), lim.error)
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    Ok(CarapointVerdict {
        carapoint: bounded && alpha.is_finite(),
        alpha,
        alpha_error,
        grid_min,
        grid_max,
        ray,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct NtLimit {
    pub value: C64,
    pub ray_error: f64,
    /// largest `|phi(lambda) - value|` over the deepest grid level
    pub deviation: f64,
}

const NT_TOL: f64 = 1e-3;

/// Nontangential limit of `phi` at the grid's boundary point.
///
/// Extrapolated along the ray and cross-checked against the off-ray points of
/// the two deepest grid levels; `NoLimit` unless the deepest deviation is below
/// `1e-3` or still shrinking under refinement.
pub fn nt_limit_phi(phi: &impl SchurFunction, grid: &NontangentialGrid) -> Result<NtLimit> {
    let tau = grid.tau();
    let samples = RAY_EXTRAPOLATION
        .steps(1.0)
        .into_iter()
        .map(|t| phi.eval(&tau.ray_point(t)))
        .collect::<Result<Vec<_>>>()?;
    let lim = extrapolate::richardson(&samples)?;
    let deviation_at = |k: u32| -> Result<f64> {
        let mut dev = 0.0f64;
        for p in grid.level(k) {
            dev = dev.max((phi.eval(&p.lambda)? - lim.value).norm());
        }
        Ok(dev)
    };
    let depth = grid.depth().max(1);
    let deepest = deviation_at(depth)?;
    let previous = if depth > 1 { deviation_at(depth - 1)? } else { f64::INFINITY };
    if deepest > NT_TOL && deepest > 0.75 * previous {
        return Err(Error::NoLimit { deviation: deepest });
    }
    Ok(NtLimit {
        value: lim.value,
        ray_error: lim.error,
        deviation: deepest,
    })
}

/// Default finite-difference schedule: `t_k = t0 2^-k`, `k = 0..=12`.
pub const FD_SCHEDULE: StepSchedule = StepSchedule::new(0, 12);

/// Directional derivative `lim (phi(tau + t delta) - phi(tau)) / t` from
/// samples of `phi` alone.
///
/// Uses the quotients `2 (phi(tau + t delta) - phi(tau + t delta / 2)) / t`,
/// which need no value at `tau` itself, and extrapolates them to `t = 0`.
/// The first step is `t0 = 2^-8 min(1, max_step)`: every sample is interior and
/// well inside the disk of analyticity of `t -> phi(tau + t delta)`.
pub fn derivative_fd(
    phi: &impl SchurFunction,
    tau: &BoundaryPoint,
    delta: &Direction,
    schedule: StepSchedule,
) -> Result<Limit> {
    if !delta.is_admissible(tau) {
        return Err(Error::InadmissibleDirection);
    }
    let t0 = 2f64.powi(-8) * delta.max_step(tau).min(1.0);
    let mut quotients = Vec::with_capacity(schedule.len());
    let mut coarse: Option<C64> = None;
    let steps = StepSchedule::new(schedule.first, schedule.last + 1).steps(t0);
    for (i, &t) in steps.iter().enumerate() {
        let value = phi.eval(&tau.shifted(delta, t))?;
        if let Some(prev) = coarse {
            quotients.push((prev - value) * 2.0 / steps[i - 1]);
        }
        coarse = Some(value);
    }
    extrapolate::richardson(&quotients)
}

/// `phi(tau) <g(Y) v_tau, v_tau>` with `g(y) = delta1 delta2 / (tau2 delta1 (1 - y) + tau1 delta2 y)`,
/// evaluated by the spectral calculus of `Y`.
pub fn derivative_model(model: &GeneralizedRealization, limit: &TauLimit, delta: &Direction) -> Result<C64> {
    let tau = model.tau();
    if !delta.is_admissible(&tau) {
        return Err(Error::InadmissibleDirection);
    }
    let g = model.pencil().contraction().apply_calculus(|y| {
        scalar_family::derivative_kernel(y, &tau, delta).unwrap_or(C64::new(f64::NAN, f64::NAN))
    })?;
    let v = &limit.v_tau;
    Ok(model.phi_at(v) * linalg::inner(&g.mul_vec(v), v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMethod {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DerivativeEntry {
    pub delta: Direction,
    pub value: C64,
    pub method: DerivativeMethod,
}

/// Directional derivatives keyed by direction.
#[derive(Debug, Clone, Default, Serialize)]
pub struct DerivativeTable {
    pub entries: Vec<DerivativeEntry>,
}

/// Direction pairs `(delta_a, delta_b)` given in rotated coordinates
/// `conj(tau_i) delta_i`; every member and every sum points into the bidisk.
/// The first pair is real; for `phi_y` its defect is `3 - 2/(2-y) - 2/(1+y)`
/// and dominates the others.
pub fn default_pairs(tau: &BoundaryPoint) -> Vec<(Direction, Direction)> {
    let c = C64::new;
    let rotated = [
        ([c(-2.0, 0.0), c(-1.0, 0.0)], [c(-1.0, 0.0), c(-2.0, 0.0)]),
        ([c(-1.0, 0.5), c(-2.0, 0.0)], [c(-2.0, 0.0), c(-1.0, -0.5)]),
        ([c(-1.0, 0.0), c(-1.5, 0.0)], [c(-1.5, 0.0), c(-1.0, 0.0)]),
        ([c(-1.0, -0.25), c(-1.0, 0.0)], [c(-1.0, 0.0), c(-2.0, 0.25)]),
    ];
    rotated
        .iter()
        .map(|(a, b)| (Direction::from_rotated(tau, *a), Direction::from_rotated(tau, *b)))
        .collect()
}

/// Every direction appearing in `pairs`, together with the pair sums, deduplicated.
pub fn pair_directions(pairs: &[(Direction, Direction)]) -> Vec<Direction> {
    let mut out: Vec<Direction> = Vec::new();
    for (a, b) in pairs {
        for d in [*a, *b, a.plus(b)] {
            if !out.iter().any(|e| same_direction(e, &d)) {
                out.push(d);
            }
        }
    }
    out
}

fn same_direction(a: &Direction, b: &Direction) -> bool {
    (a.0[0] - b.0[0]).norm() + (a.0[1] - b.0[1]).norm() <= 1e-12 * (1.0 + a.0[0].norm() + a.0[1].norm())
}

impl DerivativeTable {
    pub fn build(
        method: DerivativeMethod,
        deltas: &[Direction],
        mut f: impl FnMut(&Direction) -> Result<C64>,
    ) -> Result<Self> {
        let entries = deltas
            .iter()
            .map(|d| {
                Ok(DerivativeEntry {
                    delta: *d,
                    value: f(d)?,
                    method,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DerivativeTable { entries })
    }

    pub fn analytic(model: &GeneralizedRealization, limit: &TauLimit, deltas: &[Direction]) -> Result<Self> {
        Self::build(DerivativeMethod::Analytic, deltas, |d| derivative_model(model, limit, d))
    }

    pub fn finite_difference(
        phi: &impl SchurFunction,
        tau: &BoundaryPoint,
        deltas: &[Direction],
        schedule: StepSchedule,
    ) -> Result<Self> {
        Self::build(DerivativeMethod::FiniteDifference, deltas, |d| {
            derivative_fd(phi, tau, d, schedule).map(|l| l.value)
        })
    }

    pub fn get(&self, delta: &Direction) -> Option<C64> {
        self.entries
            .iter()
            .find(|e| same_direction(&e.delta, delta))
            .map(|e| e.value)
    }

    /// `max |D(a + b) - D(a) - D(b)|` over the pairs; `None` if an entry is missing.
    pub fn linearity_defect(&self, pairs: &[(Direction, Direction)]) -> Option<f64> {
        let mut worst = 0.0f64;
        for (a, b) in pairs {
            let defect = self.get(&a.plus(b))? - self.get(a)? - self.get(b)?;
            worst = worst.max(defect.norm());
        }
        Some(worst)
    }
}

/// `(U_1(lambda) v_lambda, U_2(lambda) v_lambda)`, a standard model on `M + M`.
#[derive(Debug, Clone)]
pub struct StandardModelVector {
    pub first: Vec<C64>,
    pub second: Vec<C64>,
    pub v: Vec<C64>,
    pub phi: C64,
}

/// `U_1 = E1 + sum_{0<y<1} u^1_{y,lambda} E_y` and `U_2 = E0 + sum_{0<y<1} u^2_{y,lambda} E_y`
/// applied to `v_lambda`.
pub fn derive_standard_model(model: &GeneralizedRealization, lambda: &DiskPoint) -> Result<StandardModelVector> {
    let (u1, u2) = standard_model_operators(model, lambda)?;
    let state = model.state(lambda)?;
    Ok(StandardModelVector {
        first: u1.mul_vec(&state.v),
        second: u2.mul_vec(&state.v),
        v: state.v,
        phi: state.phi,
    })
}

/// The operators `U_1(lambda)`, `U_2(lambda)`.
pub fn standard_model_operators(
    model: &GeneralizedRealization,
    lambda: &DiskPoint,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let pencil = model.pencil();
    let proj: &KernelProjectors = pencil.projectors();
    let mut u1 = proj.e1.clone();
    let mut u2 = proj.e0.clone();
    for (y, e) in pencil.contraction().decomposition().iter() {
        if y == 0.0 || y == 1.0 {
            continue;
        }
        let u = ScalarInner::new(y, pencil.tau())?.model_vector(lambda)?;
        u1 = u1.add_scaled(u.u1, e);
        u2 = u2.add_scaled(u.u2, e);
    }
    Ok((u1, u2))
}

/// Residual of the standard model identity
/// `1 - conj(phi(mu)) phi(lambda) = sum_i (1 - conj(mu_i) lambda_i) <U_i v_lambda, U_i v_mu>`.
pub fn standard_model_residual(model: &GeneralizedRealization, lambda: &DiskPoint, mu: &DiskPoint) -> Result<f64> {
    let sl = derive_standard_model(model, lambda)?;
    let sm = derive_standard_model(model, mu)?;
    let one = C64::new(1.0, 0.0);
    let lhs = one - sm.phi.conj() * sl.phi;
    let rhs = (one - mu.0[0].conj() * lambda.0[0]) * linalg::inner(&sl.first, &sm.first)
        + (one - mu.0[1].conj() * lambda.0[1]) * linalg::inner(&sl.second, &sm.second);
    Ok((lhs - rhs).norm())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct JuliaRow {
    pub t: f64,
    /// `||v_{lambda_t}||^2`
    pub lhs: f64,
    /// `(1 - |phi(lambda_t)|^2) / (1 - ||lambda_t||_inf^2)`
    pub rhs: f64,
    pub residual: f64,
}

/// Both sides of the Julia-quotient identity along `lambda_t = (1 - t) tau`.
///
/// The left side is the model vector from the pencil; the right side uses
/// `1 - |phi|^2` evaluated in double-double arithmetic, since in `f64` it
/// cancels down to a few digits once `t` is small.
pub fn julia_quotient_ray(model: &GeneralizedRealization, schedule: StepSchedule) -> Result<Vec<JuliaRow>> {
    let tau = model.tau();
    schedule
        .steps(1.0)
        .into_iter()
        .map(|t| {
            let s = model.state(&tau.ray_point(t))?;
            let lhs = linalg::norm(&s.v).powi(2);
            let rhs = precise::ray_state(model.colligation(), t)?.phi_defect / (t * (2.0 - t));
            Ok(JuliaRow {
                t,
                lhs,
                rhs,
                residual: (lhs - rhs).abs(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// `E v_tau = 0`
    Regular,
    /// `E v_tau != 0` and `(E0 + E1) v_tau != 0`
    Singular,
    /// `E v_tau != 0` and `(E0 + E1) v_tau = 0`
    PurelySingular,
    /// `||E v_tau||` inside the band between the classification tolerance and `1e-3`
    Indeterminate,
}

impl Classification {
    pub fn is_singular(&self) -> bool {
        matches!(self, Classification::Singular | Classification::PurelySingular)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProjectionNorms {
    /// `||E v_tau||`, the component in `N^perp`
    pub singular: f64,
    /// `||(E0 + E1) v_tau||`, the component in `N = ker Y(1 - Y)`
    pub kernel: f64,
}

pub fn classify_vector(proj: &KernelProjectors, v_tau: &[C64], class_tol: f64) -> (Classification, ProjectionNorms) {
    let norms = ProjectionNorms {
        singular: linalg::norm(&proj.e.mul_vec(v_tau)),
        kernel: linalg::norm(&proj.kernel().mul_vec(v_tau)),
    };
    let class = if norms.singular <= class_tol {
        Classification::Regular
    } else if norms.singular < INDETERMINATE_UPPER {
        Classification::Indeterminate
    } else if norms.kernel <= class_tol {
        Classification::PurelySingular
    } else {
        Classification::Singular
    };
    (class, norms)
}

/// Parameters for [`classify_model`].
#[derive(Debug, Clone)]
pub struct BoundaryConfig {
    pub aperture: f64,
    pub depth: u32,
    pub ray: StepSchedule,
    pub fd: StepSchedule,
    pub class_tol: f64,
}

impl Default for BoundaryConfig {
    fn default() -> Self {
        BoundaryConfig {
            aperture: 2.0,
            depth: 12,
            ray: StepSchedule::RAY,
            fd: FD_SCHEDULE,
            class_tol: DEFAULT_CLASS_TOL,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryReport {
    pub carapoint: bool,
    pub alpha: f64,
    pub phi_tau: C64,
    pub v_tau: Vec<C64>,
    pub v_tau_norm: f64,
    pub classification: Classification,
    pub projection_norms: ProjectionNorms,
    /// defect of the finite-difference derivative table
    pub linearity_defect: f64,
    /// defect of the spectral-calculus derivative table
    pub model_linearity_defect: f64,
    /// regular exactly when the finite-difference defect is at most `1e-6`
    pub consistent: bool,
    pub grid_points: usize,
    pub grid_max_quotient: f64,
    pub analytic: DerivativeTable,
    pub finite_difference: DerivativeTable,
}

/// Whether a classification agrees with the measured linearity defect.
pub fn classification_consistent(class: Classification, defect: f64) -> bool {
    match class {
        Classification::Regular => defect <= LINEAR_DEFECT_TOL,
        Classification::Singular | Classification::PurelySingular => defect > LINEAR_DEFECT_TOL,
        Classification::Indeterminate => true,
    }
}

/// Computes `v_tau`, classifies the model and cross-checks the result against
/// the linearity of the finite-difference directional derivative.
pub fn classify_model(model: &GeneralizedRealization, config: &BoundaryConfig) -> Result<BoundaryReport> {
    let limit = model.v_at_tau(config.ray);
    if !limit.converged {
        return Err(Error::Unconverged);
    }
    let tau = model.tau();
    let grid = NontangentialGrid::build(tau, config.aperture, config.depth)?;
    let verdict = detect_carapoint(model, &grid)?;
    let pairs = default_pairs(&tau);
    let deltas = pair_directions(&pairs);
    let analytic = DerivativeTable::analytic(model, &limit, &deltas)?;
    let fd = DerivativeTable::finite_difference(model, &tau, &deltas, config.fd)?;
    let linearity_defect = fd.linearity_defect(&pairs).expect("table covers pairs");
    let model_linearity_defect = analytic.linearity_defect(&pairs).expect("table covers pairs");
    let (classification, projection_norms) =
        classify_vector(model.pencil().projectors(), &limit.v_tau, config.class_tol);
    Ok(BoundaryReport {
        carapoint: verdict.carapoint,
        alpha: verdict.alpha,
        phi_tau: model.phi_at(&limit.v_tau),
        v_tau_norm: limit.norm(),
        v_tau: limit.v_tau,
        classification,
        projection_norms,
        linearity_defect,
        model_linearity_defect,
        consistent: classification_consistent(classification, linearity_defect),
        grid_points: grid.len(),
        grid_max_quotient: verdict.grid_max,
        analytic,
        finite_difference: fd,
    })
}
