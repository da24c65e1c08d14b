use rustc_hash::FxHashMap;

use crate::caps::Caps;
use crate::fsa::Word;

use super::arith::GroupArith;
use super::OracleError;

/// All elements of length at most `radius`, found by breadth-first search
/// in shortlex order.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: usize,
    keys: Vec<Word>,
    index: FxHashMap<Word, usize>,
    len: Vec<usize>,
    sl: Vec<Word>,
}

impl Ball {
    pub fn build(g: &dyn GroupArith, radius: usize, caps: &Caps) -> Result<Self, OracleError> {
        if radius > caps.ball_radius {
            return Err(OracleError::RadiusCap { radius, cap: caps.ball_radius });
        }
        let k = g.alphabet().len();
        let id = g.key(&[]);
        let mut b = Ball {
            radius,
            keys: vec![id.clone()],
            index: FxHashMap::from_iter([(id, 0)]),
            len: vec![0],
            sl: vec![Vec::new()],
        };
        let mut frontier = vec![0usize];
        for n in 1..=radius {
            let mut next = Vec::new();
            // frontier is in shortlex order of representatives
            for &e in &frontier {
                for a in 0..k {
                    let mut w = b.sl[e].clone();
                    w.push(a);
                    let key = g.key(&w);
                    if b.index.contains_key(&key) {
                        continue;
                    }
                    let i = b.keys.len();
                    b.index.insert(key.clone(), i);
                    b.keys.push(key);
                    b.len.push(n);
                    b.sl.push(w);
                    next.push(i);
                    if b.keys.len() > caps.ball_elements {
                        return Err(OracleError::BallCap(caps.ball_elements));
                    }
                }
            }
            frontier = next;
        }
        Ok(b)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, e: usize) -> &[usize] {
        &self.keys[e]
    }

    pub fn find(&self, key: &[usize]) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// `|g|`.
    pub fn length(&self, e: usize) -> usize {
        self.len[e]
    }

    /// Shortlex-least geodesic of `g`.
    pub fn shortlex_word(&self, e: usize) -> &[usize] {
        &self.sl[e]
    }

    /// Element counts per length `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.radius + 1];
        for &l in &self.len {
            out[l] += 1;
        }
        out
    }
}
