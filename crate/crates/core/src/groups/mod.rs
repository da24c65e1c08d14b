//! Group backends: finite multiplication tables, `Z`, free groups, and
//! amalgamated products of finite groups.

mod amalgam;
mod finite;
mod vertex;

pub use amalgam::{AmalgamLetter, AmalgamNormalForm, AmalgamSpec, Factor};
pub use finite::FiniteGroupTable;
pub use vertex::{LocalLetter, VertexGroup, VertexKind};

use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group table error at {at}: {msg}")]
    Table { at: String, msg: String },
    #[error("generating set: {0}")]
    Gens(String),
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("amalgam: {0}")]
    Amalgam(String),
}

impl GroupError {
    /// Prefix the error position with an enclosing field.
    pub fn at(self, prefix: &str) -> Self {
        match self {
            GroupError::Table { at, msg } => GroupError::Table { at: format!("{prefix}.{at}"), msg },
            other => other,
        }
    }
}

/// A built-in group name (`"Z4"`, `"S3"`, `"V4"`) or a table object.
pub fn table_from_json(v: &Value) -> Result<FiniteGroupTable, GroupError> {
    match v {
        Value::String(s) => FiniteGroupTable::builtin(s).ok_or_else(|| GroupError::Table {
            at: "$".into(),
            msg: format!("unknown built-in group {s:?}"),
        }),
        _ => FiniteGroupTable::from_json(v),
    }
}
