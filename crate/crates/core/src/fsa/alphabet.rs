use std::collections::HashMap;

use super::FsaError;

/// Display name of the projection sentinel.
pub const SENTINEL: &str = "$";

/// A word is a sequence of letter ids; ids double as the shortlex order.
pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub id: usize,
    pub name: String,
    /// Owning vertex group; `None` for the sentinel and for formal letters.
    pub vertex: Option<usize>,
    pub inverse: Option<usize>,
}

impl Letter {
    pub fn is_sentinel(&self) -> bool {
        self.name == SENTINEL
    }
}

/// Ordered set of letters. Position in the list is both the id and the
/// shortlex rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<Letter>,
    by_name: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new(letters: Vec<Letter>) -> Result<Self, FsaError> {
        let mut by_name = HashMap::new();
        for (i, l) in letters.iter().enumerate() {
            if l.id != i {
                return Err(FsaError::BadAlphabet(format!("letter {} has id {}, expected {i}", l.name, l.id)));
            }
            if l.name.is_empty() || l.name.chars().any(char::is_whitespace) {
                return Err(FsaError::BadAlphabet(format!("invalid letter name {:?}", l.name)));
            }
            if by_name.insert(l.name.clone(), i).is_some() {
                return Err(FsaError::BadAlphabet(format!("duplicate letter {}", l.name)));
            }
            if l.is_sentinel() && (l.inverse.is_some() || l.vertex.is_some()) {
                return Err(FsaError::BadAlphabet("sentinel must have no inverse and no vertex".into()));
            }
            if let Some(j) = l.inverse {
                let partner = letters.get(j).ok_or_else(|| {
                    FsaError::BadAlphabet(format!("inverse of {} out of range", l.name))
                })?;
                if partner.inverse != Some(i) {
                    return Err(FsaError::BadAlphabet(format!("inverse of {} is not an involution", l.name)));
                }
                if partner.vertex != l.vertex {
                    return Err(FsaError::BadAlphabet(format!("{} and its inverse lie in different vertices", l.name)));
                }
            }
        }
        Ok(Self { letters, by_name })
    }

    /// Formal letters with no group structure, in the given order.
    pub fn plain<S: AsRef<str>>(names: &[S]) -> Self {
        let letters = names
            .iter()
            .enumerate()
            .map(|(id, n)| Letter { id, name: n.as_ref().to_string(), vertex: None, inverse: None })
            .collect();
        Self::new(letters).expect("plain alphabet")
    }

    /// Local alphabet followed by the sentinel as the last letter.
    pub fn with_sentinel(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.push(Letter { id: letters.len(), name: SENTINEL.to_string(), vertex: None, inverse: None });
        Self::new(letters).expect("sentinel extension")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, id: usize) -> &Letter {
        &self.letters[id]
    }

    pub fn name(&self, id: usize) -> &str {
        &self.letters[id].name
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn sentinel(&self) -> Option<usize> {
        self.id_of(SENTINEL)
    }

    pub fn inverse_word(&self, w: &[usize]) -> Option<Word> {
        w.iter().rev().map(|&a| self.letters[a].inverse).collect()
    }

    /// Parse whitespace-separated letter names; `λ`, `1` and the empty
    /// string denote the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word, FsaError> {
        let s = s.trim();
        if s.is_empty() || s == "λ" || (s == "1" && self.id_of("1").is_none()) {
            return Ok(Vec::new());
        }
        s.split_whitespace()
            .map(|t| self.id_of(t).ok_or_else(|| FsaError::UnknownName(t.to_string())))
            .collect()
    }

    /// Space-separated letter names; the empty word renders as `""`.
    pub fn render_word(&self, w: &[usize]) -> String {
        w.iter().map(|&a| self.letters[a].name.as_str()).collect::<Vec<_>>().join(" ")
    }
}
