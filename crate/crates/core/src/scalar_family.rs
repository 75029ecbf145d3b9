//! Points of the bidisk and torus, and the one-parameter family of inner
//! functions `phi_y` with their explicit two-dimensional models.
//!
//! Everything is expressed in the rotated coordinates `w_i = conj(tau_i) lambda_i`
//! through `a = 1 - w_1` and `b = 1 - w_2`, in which
//!
//! ```text
//! den     = (1 - y) a + y b
//! phi_y   = 1 - a b / den
//! u_y     = (sqrt(y) b, sqrt(1 - y) a) / den
//! ```
//!
//! This form is algebraically identical to the usual quotient of degree (1,1)
//! polynomials but loses no digits as `lambda` approaches `tau`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Denominators below this modulus count as a pole.
pub const POLE_TOL: f64 = 1e-14;

const TORUS_TOL: f64 = 1e-12;

/// A point `tau = (tau1, tau2)` of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint([C64; 2]);

impl BoundaryPoint {
    pub fn new(t1: C64, t2: C64) -> Result<Self> {
        let (m1, m2) = (t1.norm(), t2.norm());
        if (m1 - 1.0).abs() > TORUS_TOL || (m2 - 1.0).abs() > TORUS_TOL {
            return Err(Error::NotOnTorus(m1, m2));
        }
        Ok(BoundaryPoint([t1, t2]))
    }

    /// `(1, 1)`
    pub fn one() -> Self {
        BoundaryPoint([C64::new(1.0, 0.0); 2])
    }

    /// Point with the given arguments, measured in turns.
    pub fn from_turns(a1: f64, a2: f64) -> Self {
        BoundaryPoint([C64::from_polar(1.0, TAU * a1), C64::from_polar(1.0, TAU * a2)])
    }

    pub fn from_angles(theta1: f64, theta2: f64) -> Self {
        BoundaryPoint([C64::from_polar(1.0, theta1), C64::from_polar(1.0, theta2)])
    }

    pub fn coords(&self) -> [C64; 2] {
        self.0
    }

    pub fn as_disk_point(&self) -> DiskPoint {
        DiskPoint(self.0)
    }

    /// `conj(tau_i) lambda_i`
    pub fn rotate(&self, lambda: &DiskPoint) -> [C64; 2] {
        [self.0[0].conj() * lambda.0[0], self.0[1].conj() * lambda.0[1]]
    }

    /// `(1 - conj(tau_1) lambda_1, 1 - conj(tau_2) lambda_2)`
    pub fn gaps(&self, lambda: &DiskPoint) -> [C64; 2] {
        let w = self.rotate(lambda);
        [C64::new(1.0, 0.0) - w[0], C64::new(1.0, 0.0) - w[1]]
    }

    /// `(1 - t) tau`
    pub fn ray_point(&self, t: f64) -> DiskPoint {
        DiskPoint([self.0[0] * (1.0 - t), self.0[1] * (1.0 - t)])
    }

    /// `tau + t delta`
    pub fn shifted(&self, delta: &Direction, t: f64) -> DiskPoint {
        DiskPoint([self.0[0] + delta.0[0] * t, self.0[1] + delta.0[1] * t])
    }

    /// `conj(tau) lambda = 1 - (a, b)` inverted: the point whose gaps are `(a, b)`.
    pub fn point_with_gaps(&self, a: C64, b: C64) -> DiskPoint {
        let one = C64::new(1.0, 0.0);
        DiskPoint([self.0[0] * (one - a), self.0[1] * (one - b)])
    }
}

/// A point `lambda = (lambda1, lambda2)` of `C^2`, usually in the open bidisk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint(pub [C64; 2]);

impl DiskPoint {
    pub fn new(l1: C64, l2: C64) -> Self {
        DiskPoint([l1, l2])
    }

    pub fn real(l1: f64, l2: f64) -> Self {
        DiskPoint([C64::new(l1, 0.0), C64::new(l2, 0.0)])
    }

    /// `max(|lambda1|, |lambda2|)`
    pub fn sup_norm(&self) -> f64 {
        self.0[0].norm().max(self.0[1].norm())
    }

    pub fn is_interior(&self) -> bool {
        self.sup_norm() < 1.0
    }

    pub fn coords(&self) -> [C64; 2] {
        self.0
    }
}

/// A direction `delta` at a boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction(pub [C64; 2]);

impl Direction {
    pub fn new(d1: C64, d2: C64) -> Self {
        Direction([d1, d2])
    }

    pub fn real(d1: f64, d2: f64) -> Self {
        Direction([C64::new(d1, 0.0), C64::new(d2, 0.0)])
    }

    /// Direction at `tau` whose rotated components `conj(tau_i) delta_i` are `d`.
    pub fn from_rotated(tau: &BoundaryPoint, d: [C64; 2]) -> Self {
        let t = tau.coords();
        Direction([t[0] * d[0], t[1] * d[1]])
    }

    /// `conj(tau_i) delta_i`
    pub fn rotated(&self, tau: &BoundaryPoint) -> [C64; 2] {
        let t = tau.coords();
        [t[0].conj() * self.0[0], t[1].conj() * self.0[1]]
    }

    /// Points into the bidisk: `Re(conj(tau_i) delta_i) < 0` for both coordinates.
    pub fn is_admissible(&self, tau: &BoundaryPoint) -> bool {
        let d = self.rotated(tau);
        d[0].re < 0.0 && d[1].re < 0.0
    }

    /// Largest `t` for which `tau + s delta` stays in the closed bidisk for all `s <= t`.
    pub fn max_step(&self, tau: &BoundaryPoint) -> f64 {
        self.rotated(tau)
            .iter()
            .map(|d| -2.0 * d.re / d.norm_sqr())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn coords(&self) -> [C64; 2] {
        self.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Direction([self.0[0] * s, self.0[1] * s])
    }

    pub fn plus(&self, other: &Direction) -> Self {
        Direction([self.0[0] + other.0[0], self.0[1] + other.0[1]])
    }
}

/// The model vector `u_{y,lambda}` in the standard basis and in the rotated
/// orthonormal basis `e_+ = (sqrt(1-y), -sqrt(y))`, `e_- = (sqrt(y), sqrt(1-y))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarModelVector {
    pub u1: C64,
    pub u2: C64,
    /// coefficient of `e_+`, equal to `sqrt(y(1-y)) (w1 - w2) / den`
    pub plus: C64,
    /// coefficient of `e_-`, identically 1
    pub minus: C64,
}

impl ScalarModelVector {
    pub fn norm(&self) -> f64 {
        (self.u1.norm_sqr() + self.u2.norm_sqr()).sqrt()
    }

    /// Standard coordinates recomputed from the rotated ones.
    pub fn from_rotated(&self, y: f64) -> [C64; 2] {
        let (sy, sc) = (y.sqrt(), (1.0 - y).sqrt());
        [self.plus * sc + self.minus * sy, -self.plus * sy + self.minus * sc]
    }
}

/// `phi_y` attached to a boundary point `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarInner {
    y: f64,
    tau: BoundaryPoint,
}

impl ScalarInner {
    pub fn new(y: f64, tau: BoundaryPoint) -> Result<Self> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::InvalidParameter(format!("y = {y} is outside [0, 1]")));
        }
        Ok(ScalarInner { y, tau })
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn tau(&self) -> BoundaryPoint {
        self.tau
    }

    /// Value of `phi_y` at `lambda`.
    pub fn eval(&self, lambda: &DiskPoint) -> Result<C64> {
        let w = self.tau.rotate(lambda);
        if self.y == 1.0 {
            return Ok(w[0]);
        }
        if self.y == 0.0 {
            return Ok(w[1]);
        }
        let [a, b] = self.tau.gaps(lambda);
        let den = denominator(self.y, a, b)?;
        Ok(C64::new(1.0, 0.0) - a * b / den)
    }

    /// The model vector of `phi_y` at `lambda`.
    pub fn model_vector(&self, lambda: &DiskPoint) -> Result<ScalarModelVector> {
        let y = self.y;
        if y == 0.0 || y == 1.0 {
            return Err(Error::DegenerateParameter(y));
        }
        let [a, b] = self.tau.gaps(lambda);
        let den = denominator(y, a, b)?;
        let w = self.tau.rotate(lambda);
        Ok(ScalarModelVector {
            u1: b * y.sqrt() / den,
            u2: a * (1.0 - y).sqrt() / den,
            plus: (w[0] - w[1]) * (y * (1.0 - y)).sqrt() / den,
            minus: C64::new(1.0, 0.0),
        })
    }

    /// Model components in the standard basis; at `y = 1` and `y = 0` these
    /// are the monomial models `(1, 0)` and `(0, 1)`.
    pub fn model_components(&self, lambda: &DiskPoint) -> Result<[C64; 2]> {
        let (one, zero) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        match self.y {
            y if y == 1.0 => Ok([one, zero]),
            y if y == 0.0 => Ok([zero, one]),
            _ => self.model_vector(lambda).map(|u| [u.u1, u.u2]),
        }
    }

    /// `D_delta phi_y(tau) = delta1 delta2 / (tau2 delta1 (1 - y) + tau1 delta2 y)`.
    pub fn directional_derivative(&self, delta: &Direction) -> Result<C64> {
        if !delta.is_admissible(&self.tau) {
            return Err(Error::InadmissibleDirection);
        }
        derivative_kernel(self.y, &self.tau, delta)
    }

    /// `|LHS - RHS|` of the model identity
    /// `1 - conj(phi(mu)) phi(lambda) = sum_i (1 - conj(mu_i) lambda_i) u^i_lambda conj(u^i_mu)`.
    pub fn model_residual(&self, lambda: &DiskPoint, mu: &DiskPoint) -> Result<f64> {
        let lhs = C64::new(1.0, 0.0) - self.eval(mu)?.conj() * self.eval(lambda)?;
        let ul = self.model_components(lambda)?;
        let um = self.model_components(mu)?;
        let rhs: C64 = (0..2)
            .map(|i| (C64::new(1.0, 0.0) - mu.0[i].conj() * lambda.0[i]) * ul[i] * um[i].conj())
            .sum();
        Ok((lhs - rhs).norm())
    }
}

fn denominator(y: f64, a: C64, b: C64) -> Result<C64> {
    let den = a * (1.0 - y) + b * y;
    let modulus = den.norm();
    if modulus < POLE_TOL {
        return Err(Error::PoleHit { modulus });
    }
    Ok(den)
}

/// `delta1 delta2 / (tau2 delta1 (1 - y) + tau1 delta2 y)` without the admissibility check.
///
/// Returns `SingularCalculus` when the denominator vanishes.
pub fn derivative_kernel(y: f64, tau: &BoundaryPoint, delta: &Direction) -> Result<C64> {
    let [t1, t2] = tau.coords();
    let [d1, d2] = delta.coords();
    let den = t2 * d1 * (1.0 - y) + t1 * d2 * y;
    if den.norm() < POLE_TOL * (d1.norm() + d2.norm()) {
        return Err(Error::SingularCalculus { eigenvalue: y });
    }
    Ok(d1 * d2 / den)
}
