//! Size guards, overridable through `GGROW_CAPS="key=value,..."`.

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    pub t_alphabet: usize,
    pub rules: usize,
    pub ball_radius: usize,
    pub ball_elements: usize,
    pub closure: usize,
    pub vertex_lhs: usize,
    pub kb_iterations: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            t_alphabet: 100_000,
            rules: 5_000_000,
            ball_radius: 14,
            ball_elements: 5_000_000,
            closure: 200_000,
            vertex_lhs: 4,
            kb_iterations: 50,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad GGROW_CAPS entry {entry:?}: {reason}")]
pub struct CapsError {
    pub entry: String,
    pub reason: String,
}

impl Caps {
    /// Defaults overridden by `GGROW_CAPS` when set.
    pub fn from_env() -> Result<Self, CapsError> {
        match std::env::var("GGROW_CAPS") {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self, CapsError> {
        let mut caps = Self::default();
        for entry in s.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let err = |reason: &str| CapsError { entry: entry.to_string(), reason: reason.to_string() };
            let (k, v) = entry.split_once('=').ok_or_else(|| err("expected key=value"))?;
            let v: usize = v.trim().parse().map_err(|_| err("value is not a nonnegative integer"))?;
            let slot = match k.trim() {
                "t_alphabet" => &mut caps.t_alphabet,
                "rules" => &mut caps.rules,
                "ball_radius" => &mut caps.ball_radius,
                "ball_elements" => &mut caps.ball_elements,
                "closure" => &mut caps.closure,
                "vertex_lhs" => &mut caps.vertex_lhs,
                "kb_iterations" => &mut caps.kb_iterations,
                _ => return Err(err("unknown key")),
            };
            *slot = v;
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides() {
        let c = Caps::parse("ball_radius=6, closure=10").unwrap();
        assert_eq!(c.ball_radius, 6);
        assert_eq!(c.closure, 10);
        assert_eq!(c.rules, Caps::default().rules);
        assert!(Caps::parse("nope=1").is_err());
        assert!(Caps::parse("rules").is_err());
    }
}
