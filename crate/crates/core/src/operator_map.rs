//! The operator-valued map
//!
//! ```text
//! I_Y(lambda) = (conj(tau1) l1 Y + conj(tau2) l2 (1 - Y) - conj(tau1 tau2) l1 l2)
//!               / (1 - conj(tau1) l1 (1 - Y) - conj(tau2) l2 Y)
//! ```
//!
//! Two independent evaluation routes are provided: a pencil solve against the
//! denominator operator ([`OperatorPencil::eval`]) and the spectral integral
//! `sum_j phi_{y_j}(lambda) E_j` ([`OperatorPencil::spectral_form`]).

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::{operator_norm, KernelProjectors, PositiveContraction};
use crate::linalg::{ComplexMatrix, C64};
use crate::random;
use crate::scalar_family::{BoundaryPoint, Direction, DiskPoint, ScalarInner};

/// Gaps below this size are treated as the point `lambda = tau` itself.
const AT_TAU: f64 = 1e-15;

#[derive(Debug, Clone)]
pub struct OperatorPencil {
    y: PositiveContraction,
    tau: BoundaryPoint,
    projectors: KernelProjectors,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractivityReport {
    pub max_norm: f64,
    pub argmax: DiskPoint,
    pub samples: usize,
}

impl OperatorPencil {
    pub fn new(y: PositiveContraction, tau: BoundaryPoint) -> Self {
        let projectors = y.kernel_projectors();
        OperatorPencil { y, tau, projectors }
    }

    pub fn contraction(&self) -> &PositiveContraction {
        &self.y
    }

    pub fn tau(&self) -> BoundaryPoint {
        self.tau
    }

    pub fn dim(&self) -> usize {
        self.y.dim()
    }

    pub fn projectors(&self) -> &KernelProjectors {
        &self.projectors
    }

    /// `a (1 - Y) + b Y`, the denominator written in gap coordinates.
    fn denominator(&self, a: C64, b: C64) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::identity(n)
            .scale(a)
            .add_scaled(b - a, self.y.matrix())
    }

    /// `I_Y(lambda)` by a solve against the denominator operator.
    ///
    /// In gap coordinates `a = 1 - conj(tau1) l1`, `b = 1 - conj(tau2) l2` this
    /// is `1 - a b (a (1 - Y) + b Y)^-1`; at `lambda = tau` it is the identity.
    pub fn eval(&self, lambda: &DiskPoint) -> Result<ComplexMatrix> {
        let n = self.dim();
        let [a, b] = self.tau.gaps(lambda);
        if a.norm() < AT_TAU && b.norm() < AT_TAU {
            return Ok(ComplexMatrix::identity(n));
        }
        let inv = self
            .denominator(a, b)
            .inverse()
            .map_err(|_| Error::SingularDenominator)?;
        Ok(ComplexMatrix::identity(n).add_scaled(-(a * b), &inv))
    }

    /// `sum_j phi_{y_j}(lambda) E_j`.
    pub fn spectral_form(&self, lambda: &DiskPoint) -> Result<ComplexMatrix> {
        let n = self.dim();
        let [a, b] = self.tau.gaps(lambda);
        if a.norm() < AT_TAU && b.norm() < AT_TAU {
            return Ok(ComplexMatrix::identity(n));
        }
        let mut out = ComplexMatrix::zeros(n, n);
        for (y, e) in self.y.decomposition().iter() {
            let value = ScalarInner::new(y, self.tau)?
                .eval(lambda)
                .map_err(|_| Error::SingularDenominator)?;
            out = out.add_scaled(value, e);
        }
        Ok(out)
    }

    /// `I_Y(tau + t delta) - 1 = t conj(tau1 tau2) delta1 delta2 (conj(tau1) delta1 (1 - Y) + conj(tau2) delta2 Y)^-1`.
    pub fn difference_at_tau(&self, delta: &Direction, t: f64) -> Result<ComplexMatrix> {
        let [t1, t2] = self.tau.coords();
        let [d1, d2] = delta.coords();
        let (e1, e2) = (t1.conj() * d1, t2.conj() * d2);
        let inv = self
            .denominator(e1, e2)
            .inverse()
            .map_err(|_| Error::SingularCalculus { eigenvalue: f64::NAN })?;
        Ok(inv.scale(t1.conj() * t2.conj() * d1 * d2 * t))
    }

    /// `D_delta I(tau) = delta1 delta2 (tau2 delta1 (1 - Y) + tau1 delta2 Y)^-1`.
    pub fn derivative_at_tau(&self, delta: &Direction) -> Result<ComplexMatrix> {
        if !delta.is_admissible(&self.tau) {
            return Err(Error::InadmissibleDirection);
        }
        let [t1, t2] = self.tau.coords();
        let [d1, d2] = delta.coords();
        let inv = self
            .denominator(t2 * d1, t1 * d2)
            .inverse()
            .map_err(|_| Error::SingularCalculus { eigenvalue: f64::NAN })?;
        Ok(inv.scale(d1 * d2))
    }

    /// Largest sampled `||I_Y(lambda)||` over random points of the open bidisk.
    pub fn contractivity_scan<R: Rng>(&self, n_samples: usize, rng: &mut R) -> Result<ContractivityReport> {
        if n_samples == 0 {
            return Err(Error::InvalidParameter("n_samples must be positive".into()));
        }
        let mut best = ContractivityReport {
            max_norm: f64::NEG_INFINITY,
            argmax: DiskPoint::real(0.0, 0.0),
            samples: n_samples,
        };
        for _ in 0..n_samples {
            let lambda = random::bidisk_point(rng);
            let norm = operator_norm(&self.eval(&lambda)?)?;
            if norm > best.max_norm {
                best.max_norm = norm;
                best.argmax = lambda;
            }
        }
        Ok(best)
    }
}
