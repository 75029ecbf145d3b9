use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (defect {defect:.3e} exceeds {tol:.3e})")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("eigenvalue {eigenvalue} lies outside [0, 1]")]
    SpectrumOutOfRange { eigenvalue: f64 },

    #[error("functional calculus is singular at eigenvalue {eigenvalue}")]
    SingularCalculus { eigenvalue: f64 },

    #[error("linear system is numerically singular")]
    Singular,

    #[error("denominator 1 - conj(tau1) l1 (1 - Y) - conj(tau2) l2 Y is singular at this point")]
    SingularDenominator,

    #[error("resolvent 1 - A I(lambda) is singular at this point")]
    SingularResolvent,

    #[error("pole of phi_y hit (|denominator| = {modulus:.3e})")]
    PoleHit { modulus: f64 },

    #[error("parameter y = {0} is degenerate for this operation (requires 0 < y < 1)")]
    DegenerateParameter(f64),

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("point is not on the torus: |tau| = ({0}, {1})")]
    NotOnTorus(f64, f64),

    #[error("direction is not admissible: Re(conj(tau_i) delta_i) must be negative for both coordinates")]
    InadmissibleDirection,

    #[error("colligation is not isometric (defect {defect:.3e} exceeds {tol:.3e})")]
    NotIsometric { defect: f64, tol: f64 },

    #[error("aperture constant {0} is below 1")]
    BadAperture(f64),

    #[error("extrapolation did not converge")]
    ExtrapolationFailed,

    #[error("no nontangential limit: off-ray deviation {deviation:.3e}")]
    NoLimit { deviation: f64 },

    #[error("boundary value v_tau did not converge along the ray")]
    Unconverged,
}

pub type Result<T> = std::result::Result<T, Error>;
