//! Clique alphabet `T`, the complete rewriting system `(T, R)` of a graph
//! product, and a critical-pair confluence checker.

mod confluence;
mod srs;
mod system;
mod talphabet;
mod vertex_sys;

pub use confluence::{check_confluence, ConfluenceReport, CriticalPair};
pub use srs::{shortlex, Overlap, OverlapSite, Srs};
pub use system::{weightlex_compare, RewriteRule, RewritingSystem, RuleKind};
pub use talphabet::{TAlphabet, TLetter};
pub use vertex_sys::vertex_system;

#[derive(Debug, thiserror::Error)]
pub enum RewriteError {
    #[error("clique alphabet exceeds {0} letters")]
    TooManyTLetters(usize),
    #[error("rule set exceeds {0} rules")]
    TooManyRules(usize),
    #[error("vertex system has a left side of length {len}, above the limit {limit}")]
    VertexLhs { len: usize, limit: usize },
    #[error("vertex completion did not finish in {0} rounds")]
    Completion(usize),
    #[error("rule does not decrease weightlex: {0}")]
    NotDecreasing(String),
    #[error("{{{0}}} is not a clique letter")]
    NotInT(String),
    #[error("{0}")]
    Parse(String),
    #[error("rule {0} out of range (system has {1})")]
    NoSuchRule(usize, usize),
}
