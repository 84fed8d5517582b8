//! Numerical radius computation and finite-dimensional verification of operator
//! inequalities: block-matrix positivity, a generalized mixed Schwarz inequality,
//! numerical-radius upper bounds and bounds through the Aluthge transform.

pub mod error;
pub mod harness;
pub mod inequalities;
pub mod linalg;

pub use error::{LinalgError, Result};
pub use linalg::{c64, ComplexMatrix, HermEigen, SvdFactors, C64};
pub mod radius;
pub mod random;
pub mod transforms;

pub use inequalities::BoundReport;
pub use radius::{numerical_radius, omega, SweepConfig, SweepResult};
pub use transforms::{aluthge, generalized_polar, polar, AluthgeResult, PolarFactors};
