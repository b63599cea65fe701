//! Exact tensor-product decompositions of finite-dimensional weight modules
//! over the Hopf-Ore extension `H = kG(chi^{-1}, a, 0)`.

pub mod characters;
pub mod error;
pub mod green;
pub mod labels;
pub mod linalg;
pub mod oracle;
pub mod realization;
pub mod rules;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
