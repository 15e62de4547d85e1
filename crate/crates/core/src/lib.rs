//! Resolvent bounds for contractions, the extremal Toeplitz matrices that
//! make them sharp, and zero statistics of random orthogonal polynomials on
//! the unit circle.

pub mod acceptance;
pub mod bounds;
pub mod error;
pub mod extremal;
pub mod linalg;
pub mod opuc;
pub mod poly;
pub mod rng;
pub mod stats;
pub mod toeplitz;
pub mod tolerances;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
pub use tolerances::Tolerances;
