//! Schur functions generated from a positive contraction `Y` and an
//! isometric colligation `V = [A B; C D]` on `M + C`.
//!
//! With `I = I_Y(lambda)` the state and the function value are
//!
//! ```text
//! v_lambda   = (1 - A I)^-1 B
//! phi(lambda) = D + C I v_lambda
//! ```
//!
//! so that `V (I v_lambda, 1) = (v_lambda, phi(lambda))`. Because `V` is an
//! isometry this gives the generalized model identity
//! `1 - conj(phi(mu)) phi(lambda) = <(1 - I(mu)* I(lambda)) v_lambda, v_mu>`.

use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extrapolate::{self, StepSchedule};
use crate::hermitian::PositiveContraction;
use crate::linalg::{self, ComplexMatrix, C64};
use crate::operator_map::OperatorPencil;
use crate::precise;
use crate::random;
use crate::scalar_family::{BoundaryPoint, DiskPoint};

pub const DEFAULT_ISOTOL: f64 = 1e-8;

/// A block operator `V = [A B; C D]` on `M + C`.
#[derive(Debug, Clone)]
pub struct Colligation {
    v: ComplexMatrix,
    a: ComplexMatrix,
    b: Vec<C64>,
    c: Vec<C64>,
    d: C64,
}

impl Colligation {
    /// Accepts `v` if `||V* V - 1||_F <= isotol`.
    pub fn validate(v: &ComplexMatrix, isotol: f64) -> Result<Self> {
        let col = Self::unchecked(v)?;
        let defect = col.isometry_defect();
        if defect > isotol {
            return Err(Error::NotIsometric { defect, tol: isotol });
        }
        Ok(col)
    }

    /// Splits `v` into blocks without checking isometry. Meant for negative controls.
    pub fn unchecked(v: &ComplexMatrix) -> Result<Self> {
        if !v.is_square() || v.rows() < 2 {
            return Err(Error::Shape(format!(
                "colligation must be square of size dim(M) + 1 >= 2, got {}x{}",
                v.rows(),
                v.cols()
            )));
        }
        let n = v.rows() - 1;
        Ok(Colligation {
            v: v.clone(),
            a: v.block(0, n, 0, n),
            b: (0..n).map(|i| v[(i, n)]).collect(),
            c: v.row(n)[..n].to_vec(),
            d: v[(n, n)],
        })
    }

    /// A random unitary colligation with `(1 - A)^-1 B = v_tau` and `D + C v_tau = phi_tau`.
    ///
    /// Built as `Q2 Q1*` where `Q1`, `Q2` are random unitaries whose first columns
    /// are `(v_tau, 1)` and `(v_tau, phi_tau)` normalized; `V` then maps one to the other.
    pub fn with_boundary_state<R: Rng>(v_tau: &[C64], phi_tau: C64, rng: &mut R) -> Result<Self> {
        if (phi_tau.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter("phi(tau) must be unimodular".into()));
        }
        let mut p = v_tau.to_vec();
        p.push(C64::new(1.0, 0.0));
        let mut q = v_tau.to_vec();
        q.push(phi_tau);
        let q1 = random::unitary_with_first_column(&p, rng);
        let q2 = random::unitary_with_first_column(&q, rng);
        Self::unchecked(&precise::polish_isometry(&(&q2 * &q1.adjoint())))
    }

    /// Random unitary colligation on `C^n + C`.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        Self::unchecked(&precise::polish_isometry(&random::unitary(n + 1, rng))).expect("square")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.v
    }

    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &[C64] {
        &self.b
    }

    pub fn c(&self) -> &[C64] {
        &self.c
    }

    pub fn d(&self) -> C64 {
        self.d
    }

    /// `||V* V - 1||_F`, accumulated in double-double.
    pub fn isometry_defect(&self) -> f64 {
        precise::isometry_defect(&self.v)
    }
}

/// Ray limit of the model vector `v_lambda` as `lambda = (1 - t) tau -> tau`.
#[derive(Debug, Clone, Serialize)]
pub struct TauLimit {
    pub v_tau: Vec<C64>,
    pub converged: bool,
    /// norm of the difference of the last two Richardson estimates
    pub spread: f64,
}

impl TauLimit {
    pub fn norm(&self) -> f64 {
        linalg::norm(&self.v_tau)
    }
}

/// A generalized model `(M, v, I_Y)` together with the function it realizes.
#[derive(Debug, Clone)]
pub struct GeneralizedRealization {
    pencil: OperatorPencil,
    colligation: Colligation,
}

/// Everything computed at one point: `I_Y(lambda)`, `v_lambda`, `phi(lambda)`.
#[derive(Debug, Clone)]
pub struct PointState {
    pub i_y: ComplexMatrix,
    pub v: Vec<C64>,
    pub phi: C64,
}

impl GeneralizedRealization {
    pub fn new(pencil: OperatorPencil, colligation: Colligation) -> Result<Self> {
        if pencil.dim() != colligation.state_dim() {
            return Err(Error::Shape(format!(
                "Y acts on C^{} but the colligation state space is C^{}",
                pencil.dim(),
                colligation.state_dim()
            )));
        }
        Ok(GeneralizedRealization { pencil, colligation })
    }

    pub fn pencil(&self) -> &OperatorPencil {
        &self.pencil
    }

    pub fn colligation(&self) -> &Colligation {
        &self.colligation
    }

    pub fn tau(&self) -> BoundaryPoint {
        self.pencil.tau()
    }

    pub fn dim(&self) -> usize {
        self.pencil.dim()
    }

    pub fn state(&self, lambda: &DiskPoint) -> Result<PointState> {
        let i_y = self.pencil.eval(lambda)?;
        let n = self.dim();
        let resolvent = ComplexMatrix::identity(n).add_scaled(C64::new(-1.0, 0.0), &(self.colligation.a() * &i_y));
        let v = resolvent
            .solve(self.colligation.b())
            .map_err(|_| Error::SingularResolvent)?;
        let iv = i_y.mul_vec(&v);
        let phi = self.colligation.d() + linalg::inner(&iv, &conj_vec(self.colligation.c()));
        Ok(PointState { i_y, v, phi })
    }

    /// `phi(lambda) = D + C I (1 - A I)^-1 B`
    pub fn phi(&self, lambda: &DiskPoint) -> Result<C64> {
        self.state(lambda).map(|s| s.phi)
    }

    /// `v_lambda = (1 - A I)^-1 B`
    pub fn model_vector(&self, lambda: &DiskPoint) -> Result<Vec<C64>> {
        self.state(lambda).map(|s| s.v)
    }

    /// `|1 - conj(phi(mu)) phi(lambda) - <(1 - I(mu)* I(lambda)) v_lambda, v_mu>|`
    pub fn model_residual(&self, lambda: &DiskPoint, mu: &DiskPoint) -> Result<f64> {
        let sl = self.state(lambda)?;
        let sm = self.state(mu)?;
        let lhs = C64::new(1.0, 0.0) - sm.phi.conj() * sl.phi;
        let rhs = linalg::inner(&sl.v, &sm.v) - linalg::inner(&sl.i_y.mul_vec(&sl.v), &sm.i_y.mul_vec(&sm.v));
        Ok((lhs - rhs).norm())
    }

    /// Two-point Richardson limit of `v_{(1-t) tau}` over `schedule`.
    pub fn v_at_tau(&self, schedule: StepSchedule) -> TauLimit {
        let tau = self.tau();
        let mut samples = Vec::with_capacity(schedule.len());
        for t in schedule.steps(1.0) {
            match self.model_vector(&tau.ray_point(t)) {
                Ok(v) => samples.push(v),
                Err(_) => {
                    return TauLimit {
                        v_tau: vec![C64::new(f64::NAN, f64::NAN); self.dim()],
                        converged: false,
                        spread: f64::INFINITY,
                    }
                }
            }
        }
        let estimates = extrapolate::two_point_vectors(&samples);
        let divergent = extrapolate::is_divergent(&estimates);
        let (v_tau, spread) = match estimates.as_slice() {
            [.., prev, last] => (last.clone(), linalg::norm(&linalg::sub(last, prev))),
            [only] => (only.clone(), f64::INFINITY),
            [] => (samples[0].clone(), f64::INFINITY),
        };
        TauLimit {
            converged: !divergent && spread.is_finite(),
            v_tau,
            spread,
        }
    }

    /// `phi(tau) = D + C v_tau`, since `I_Y(tau) = 1`.
    pub fn phi_at(&self, v_tau: &[C64]) -> C64 {
        self.colligation.d() + linalg::inner(v_tau, &conj_vec(self.colligation.c()))
    }

    pub fn to_spec(&self) -> ModelSpec {
        let t = self.tau().coords();
        ModelSpec {
            dim: self.dim(),
            tau: [[t[0].re, t[0].im], [t[1].re, t[1].im]],
            y: self.pencil.contraction().matrix().clone(),
            v: self.colligation.matrix().clone(),
        }
    }
}

fn conj_vec(x: &[C64]) -> Vec<C64> {
    x.iter().map(|z| z.conj()).collect()
}

/// JSON model description: `{"dim":n, "tau":[[re,im],[re,im]], "Y":{...}, "V":{...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    pub dim: usize,
    pub tau: [[f64; 2]; 2],
    #[serde(rename = "Y")]
    pub y: ComplexMatrix,
    #[serde(rename = "V")]
    pub v: ComplexMatrix,
}

impl ModelSpec {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> std::io::Result<std::result::Result<Self, serde_json::Error>> {
        Ok(Self::from_json(&std::fs::read_to_string(path)?))
    }

    pub fn boundary_point(&self) -> Result<BoundaryPoint> {
        let [[r1, i1], [r2, i2]] = self.tau;
        BoundaryPoint::new(C64::new(r1, i1), C64::new(r2, i2))
    }

    /// Validates every piece and assembles the realization.
    pub fn build(&self, eigtol: f64, isotol: f64) -> Result<GeneralizedRealization> {
        if self.y.rows() != self.dim || self.v.rows() != self.dim + 1 {
            return Err(Error::Shape(format!(
                "dim = {} but Y is {}x{} and V is {}x{}",
                self.dim,
                self.y.rows(),
                self.y.cols(),
                self.v.rows(),
                self.v.cols()
            )));
        }
        let tau = self.boundary_point()?;
        let colligation = Colligation::validate(&self.v, isotol)?;
        let y = PositiveContraction::new(&self.y, eigtol)?;
        GeneralizedRealization::new(OperatorPencil::new(y, tau), colligation)
    }
}
