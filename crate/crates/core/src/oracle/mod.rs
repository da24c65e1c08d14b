//! Brute-force ground truth: balls, conjugacy classes, and the definitional
//! trimmed / cyclically trimmed tests.

mod arith;
mod ball;
mod conj;
mod trimmed;

pub use arith::GroupArith;
pub use ball::Ball;
pub use conj::{strict_counts, ClassInfo, ConjugacyTable};
pub use trimmed::{is_cyclically_trimmed, is_trimmed, TrimOracle};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("ball radius {radius} above the cap {cap}")]
    RadiusCap { radius: usize, cap: usize },
    #[error("ball exceeds {0} elements")]
    BallCap(usize),
    #[error("operation closure exceeds {0} words")]
    ClosureCap(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
