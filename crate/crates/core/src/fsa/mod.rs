//! Finite automata over ordered alphabets and their growth series.

mod alphabet;
mod dfa;
mod growth;
mod nfa;

pub use alphabet::{Alphabet, Letter, Word, SENTINEL};
pub use dfa::Dfa;
pub use growth::strict_growth_series;
pub use nfa::Fsa;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FsaError {
    #[error("letter id {0} is not in the alphabet")]
    UnknownLetter(usize),
    #[error("unknown letter name {0:?}")]
    UnknownName(String),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("bad alphabet: {0}")]
    BadAlphabet(String),
}
