//! Exact generating-function arithmetic over `Z[z]`.

mod expansion;
mod poly;
mod rational;
mod reconstruct;

pub use expansion::SeriesExpansion;
pub use poly::IntPolynomial;
pub use rational::RationalFunction;
pub use reconstruct::reconstruct_rational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function {0} has a pole at z = 0")]
    NotExpandable(String),
    #[error("coefficient {index} of the expansion is not an integer")]
    NonIntegral { index: usize },
    #[error("logarithmic derivative needs r(0) != 0")]
    LogOfNonUnit,
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
}
