//! Loading group specs from JSON.

use std::path::Path;
use std::sync::Arc;

use serde_json::Value;

use crate::fsa::{Alphabet, Word};
use crate::graphprod::{GraphProdError, GraphProductSpec};
use crate::groups::{AmalgamSpec, GroupError};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    GraphProduct(#[from] GraphProdError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("bad word {0:?}")]
    Word(String),
}

/// A graph product, or an amalgam of finite groups (`"type":"amalgam"`).
#[derive(Clone, Debug)]
pub enum GroupSpec {
    GraphProduct(GraphProductSpec),
    Amalgam(AmalgamSpec),
}

impl GroupSpec {
    pub fn from_json(v: &Value) -> Result<Self, InputError> {
        if v.get("type").and_then(Value::as_str) == Some("amalgam") {
            Ok(Self::Amalgam(AmalgamSpec::from_json(v)?))
        } else {
            Ok(Self::GraphProduct(GraphProductSpec::from_json(v)?))
        }
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        match self {
            Self::GraphProduct(s) => s.alphabet(),
            Self::Amalgam(a) => a.alphabet(),
        }
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, InputError> {
        self.alphabet().parse_word(s).map_err(|_| InputError::Word(s.to_string()))
    }
}
