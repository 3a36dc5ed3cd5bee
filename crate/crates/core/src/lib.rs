pub mod bounds;
pub mod cli;
pub mod eigensolvers;
pub mod error;
pub mod experiment;
pub mod filters;
pub mod linalg;
pub mod majorization;
pub mod rng;
pub mod scalar;
pub mod subspaces;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

pub use num_complex::{Complex32, Complex64};

pub type Matrix64 = linalg::Matrix<f64>;
pub type Matrix32 = linalg::Matrix<f32>;
pub type CMatrix64 = linalg::Matrix<Complex64>;
pub type CMatrix32 = linalg::Matrix<Complex32>;
