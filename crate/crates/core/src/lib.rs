//! Finite-dimensional generalized Hilbert-space models of Schur-Agler
//! functions on the bidisk, and numerical checks of their boundary behavior
//! at carapoints.
//!
//! The building blocks, bottom-up:
//!
//! - [`linalg`]: dense complex matrices, LU solves (via nalgebra).
//! - [`hermitian`]: spectral decomposition with clustering, [`PositiveContraction`],
//!   functional calculus and the kernel projectors `E1`, `E0`, `E`.
//! - [`scalar_family`]: the inner functions `phi_y` and their explicit models.
//! - [`operator_map`]: the operator-valued map `I_Y` built from a positive
//!   contraction and a boundary point.
//! - [`realization`]: Schur functions generated from `Y` and an isometric
//!   colligation, with their generalized model vectors.
//! - [`boundary`]: nontangential grids, carapoint detection, directional
//!   derivatives, the derived standard model and the regular / singular
//!   classification.
//! - [`extrapolate`]: Richardson extrapolation on halving step schedules.
//! - [`precise`]: double-double evaluation along the ray, where `1 - |phi|^2`
//!   cancels in `f64`.
//! - [`random`]: seeded generators for boundary points, unitaries and spectra.
//! - [`report`]: JSON reports and 17-digit CSV tables.
//! - [`suite`]: randomized verification of all of the above.
//! - [`cli`]: the `caralab` command-line front end.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod boundary;
pub mod cli;
pub mod error;
pub mod extrapolate;
pub mod hermitian;
pub mod linalg;
pub mod operator_map;
pub mod precise;
pub mod random;
pub mod realization;
pub mod report;
pub mod scalar_family;
pub mod suite;

pub use boundary::{BoundaryReport, Classification, NontangentialGrid, SchurFunction};
pub use error::{Error, Result};
pub use hermitian::{KernelProjectors, PositiveContraction, SpectralDecomposition};
pub use linalg::{ComplexMatrix, C64};
pub use operator_map::OperatorPencil;
pub use realization::{Colligation, GeneralizedRealization, ModelSpec};
pub use scalar_family::{BoundaryPoint, Direction, DiskPoint, ScalarInner};
