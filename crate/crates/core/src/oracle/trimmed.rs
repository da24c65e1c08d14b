use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::caps::Caps;
use crate::fsa::Word;
use crate::graphprod::GraphProductSpec;

use super::OracleError;

/// Letters per packed word.
const PACK_LEN: usize = 18;

const DENSE_LIMIT: u128 = 1 << 26;

fn pack(w: &[usize]) -> u128 {
    w.iter().enumerate().fold(0u128, |acc, (i, &a)| acc | ((a as u128 + 1) << (7 * i)))
}

fn unpack(mut p: u128, out: &mut Word) {
    out.clear();
    while p != 0 {
        out.push((p & 0x7f) as usize - 1);
        p >>= 7;
    }
}

fn mask(s: usize, e: usize) -> u128 {
    let hi = if 7 * e >= 128 { u128::MAX } else { (1u128 << (7 * e)) - 1 };
    hi & !((1u128 << (7 * s)) - 1)
}

fn letter_at(p: u128, i: usize) -> usize {
    ((p >> (7 * i)) & 0x7f) as usize - 1
}

/// Definitional Geo / ConjGeo membership through the length-preserving
/// operations: local exchange, shuffle and, for the cyclic test, cyclic
/// conjugation and conjugacy exchange.
///
/// Every operation is invertible, so a closure is a class on which the
/// answer is constant; answers are cached per class. Words are packed
/// seven bits per letter.
pub struct TrimOracle<'a> {
    spec: &'a GraphProductSpec,
    cyclic: bool,
    cap: usize,
    memo: FxHashMap<u128, bool>,
    /// per length: 0 unknown, 1 trimmed, 2 not, 3 queued; used while
    /// `letters^length` is small
    dense: Vec<Option<Vec<u8>>>,
    /// packed block -> packed same-length equal words, `None` if not geodesic
    exchange: FxHashMap<u128, Option<Vec<u128>>>,
    /// packed block -> packed same-length conjugates, `None` if not a
    /// conjugacy geodesic
    conj_exchange: FxHashMap<u128, Option<Vec<u128>>>,
    vertex: Vec<usize>,
}

impl<'a> TrimOracle<'a> {
    pub fn new(spec: &'a GraphProductSpec, cyclic: bool, caps: &Caps) -> Result<Self, OracleError> {
        if spec.alphabet().len() >= 127 {
            return Err(OracleError::Unsupported("at most 126 letters".into()));
        }
        Ok(Self {
            spec,
            cyclic,
            cap: caps.closure,
            memo: FxHashMap::default(),
            dense: Vec::new(),
            exchange: FxHashMap::default(),
            conj_exchange: FxHashMap::default(),
            vertex: (0..spec.alphabet().len()).map(|a| spec.vertex_of(a)).collect(),
        })
    }

    fn block_alternatives(&mut self, block: &[usize], conj: bool) -> Option<&Vec<u128>> {
        let key = pack(block);
        let spec = self.spec;
        let cache = if conj { &mut self.conj_exchange } else { &mut self.exchange };
        cache
            .entry(key)
            .or_insert_with(|| {
                let v = spec.vertex_of(block[0]);
                let g = spec.vertex(v);
                let u: Word = block.iter().map(|&a| spec.local_index(a)).collect();
                let ok = if conj { g.is_conj_geodesic(&u) } else { g.is_geodesic(&u) };
                ok.then(|| {
                    let alts = if conj { g.same_length_conjugate_words(&u) } else { g.same_length_equal_words(&u) };
                    let ids = spec.vertex_letters(v);
                    alts.iter()
                        .map(|alt| pack(&alt.iter().map(|&j| ids[j]).collect::<Vec<_>>()))
                        .filter(|&q| q != key)
                        .collect()
                })
            })
            .as_ref()
    }

    /// Pushes the packed neighbours of `w`; false if a length-reducing
    /// operation applies.
    fn neighbours(&mut self, w: &[usize], out: &mut Vec<u128>) -> bool {
        out.clear();
        let n = w.len();
        if n == 0 {
            return true;
        }
        let p = pack(w);
        let mut s = 0;
        for i in 1..=n {
            if i == n || self.vertex[w[i]] != self.vertex[w[s]] {
                let m = mask(s, i);
                let Some(alts) = self.block_alternatives(&w[s..i], false) else {
                    return false;
                };
                out.extend(alts.iter().map(|&q| (p & !m) | (q << (7 * s))));
                s = i;
            }
        }
        for i in 0..n - 1 {
            let (x, y) = (self.vertex[w[i]], self.vertex[w[i + 1]]);
            if x != y && self.spec.adjacent(x, y) {
                let m = mask(i, i + 2);
                let swapped = ((letter_at(p, i + 1) as u128 + 1) << (7 * i)) | ((letter_at(p, i) as u128 + 1) << (7 * (i + 1)));
                out.push((p & !m) | swapped);
            }
        }
        if self.cyclic {
            for r in 1..n {
                out.push((p >> (7 * r)) | ((p & mask(0, r)) << (7 * (n - r))));
            }
            let v = self.vertex[w[0]];
            let e = w.iter().position(|&a| self.vertex[a] != v).unwrap_or(n);
            if w[e..].iter().all(|&a| self.spec.adjacent(v, self.vertex[a])) {
                let m = mask(0, e);
                let Some(alts) = self.block_alternatives(&w[..e], true) else {
                    return false;
                };
                out.extend(alts.iter().map(|&q| (p & !m) | q));
            }
        }
        true
    }

    /// Trimmed (or cyclically trimmed) test for `w`.
    pub fn test(&mut self, w: &[usize]) -> Result<bool, OracleError> {
        if w.len() > PACK_LEN {
            return Err(OracleError::Unsupported(format!("words longer than {PACK_LEN}")));
        }
        let k = self.vertex.len();
        let n = w.len();
        let size = (k as u128).checked_pow(n as u32).filter(|&x| x <= DENSE_LIMIT);
        match size {
            Some(size) => {
                if self.dense.len() <= n {
                    self.dense.resize(n + 1, None);
                }
                let mut table = self.dense[n].take().unwrap_or_else(|| vec![0u8; size as usize]);
                let r = self.test_dense(w, &mut table);
                self.dense[n] = Some(table);
                r
            }
            None => self.test_sparse(w),
        }
    }

    fn test_dense(&mut self, w: &[usize], table: &mut [u8]) -> Result<bool, OracleError> {
        let k = self.vertex.len() as u128;
        let slot = |p: u128| {
            let (mut idx, mut mul, mut p) = (0u128, 1u128, p);
            while p != 0 {
                idx += ((p & 0x7f) - 1) * mul;
                mul *= k;
                p >>= 7;
            }
            idx as usize
        };
        let p0 = pack(w);
        match table[slot(p0)] {
            1 => return Ok(true),
            2 => return Ok(false),
            _ => {}
        }
        let mut visited = vec![p0];
        table[slot(p0)] = 3;
        let mut head = 0;
        let mut buf = Vec::new();
        let mut nb = Vec::new();
        let mut answer = true;
        'bfs: while head < visited.len() {
            let p = visited[head];
            head += 1;
            unpack(p, &mut buf);
            if !self.neighbours(&buf, &mut nb) {
                answer = false;
                break;
            }
            for &q in &nb {
                let i = slot(q);
                match table[i] {
                    0 => {
                        table[i] = 3;
                        visited.push(q);
                        if visited.len() > self.cap {
                            for &v in &visited {
                                table[slot(v)] = 0;
                            }
                            return Err(OracleError::ClosureCap(self.cap));
                        }
                    }
                    3 => {}
                    r => {
                        answer = r == 1;
                        break 'bfs;
                    }
                }
            }
        }
        let mark = if answer { 1 } else { 2 };
        for v in visited {
            table[slot(v)] = mark;
        }
        Ok(answer)
    }

    fn test_sparse(&mut self, w: &[usize]) -> Result<bool, OracleError> {
        let p0 = pack(w);
        if let Some(&r) = self.memo.get(&p0) {
            return Ok(r);
        }
        let mut seen: FxHashSet<u128> = FxHashSet::default();
        let mut queue = VecDeque::from([p0]);
        seen.insert(p0);
        let mut buf = Vec::new();
        let mut nb = Vec::new();
        let mut answer = true;
        'bfs: while let Some(p) = queue.pop_front() {
            unpack(p, &mut buf);
            if !self.neighbours(&buf, &mut nb) {
                answer = false;
                break;
            }
            for &q in &nb {
                if let Some(&r) = self.memo.get(&q) {
                    // a class already settled
                    answer = r;
                    break 'bfs;
                }
                if seen.insert(q) {
                    if seen.len() > self.cap {
                        return Err(OracleError::ClosureCap(self.cap));
                    }
                    queue.push_back(q);
                }
            }
        }
        for p in seen {
            self.memo.insert(p, answer);
        }
        Ok(answer)
    }
}

/// Single-word convenience wrappers.
pub fn is_trimmed(spec: &GraphProductSpec, w: &[usize], caps: &Caps) -> Result<bool, OracleError> {
    TrimOracle::new(spec, false, caps)?.test(w)
}

pub fn is_cyclically_trimmed(spec: &GraphProductSpec, w: &[usize], caps: &Caps) -> Result<bool, OracleError> {
    TrimOracle::new(spec, true, caps)?.test(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphprod::builtin;

    #[test]
    fn examples() {
        let caps = Caps::default();
        let s = builtin::racg();
        assert!(is_trimmed(&s, &[], &caps).unwrap());
        assert!(is_cyclically_trimmed(&s, &[], &caps).unwrap());
        assert!(!is_trimmed(&s, &s.parse_word("a2 a1 a2").unwrap(), &caps).unwrap());
        assert!(is_trimmed(&s, &s.parse_word("a2 a3 a2").unwrap(), &caps).unwrap());
        assert!(!is_cyclically_trimmed(&s, &s.parse_word("a2 a3 a2").unwrap(), &caps).unwrap());
        let f = builtin::f2();
        let w = f.parse_word("a b a^-1").unwrap();
        assert!(is_trimmed(&f, &w, &caps).unwrap());
        assert!(!is_cyclically_trimmed(&f, &w, &caps).unwrap());
    }

    #[test]
    fn pack_roundtrip() {
        let w = vec![0, 5, 125, 3];
        let mut out = Vec::new();
        unpack(pack(&w), &mut out);
        assert_eq!(out, w);
    }
}
