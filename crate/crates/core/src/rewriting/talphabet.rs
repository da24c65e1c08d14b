use std::cmp::Reverse;

use rustc_hash::FxHashMap;

use crate::caps::Caps;
use crate::fsa::Word;
use crate::graphprod::GraphProductSpec;

use super::RewriteError;

/// A clique letter: one letter of `X` per vertex of a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLetter {
    /// Letters of `X`, by ascending vertex index.
    pub members: Vec<usize>,
}

impl TLetter {
    pub fn weight(&self) -> usize {
        self.members.len()
    }
}

/// `T`, ordered by decreasing weight and then by sorted letter ids.
#[derive(Clone, Debug)]
pub struct TAlphabet {
    letters: Vec<TLetter>,
    names: Vec<String>,
    index: FxHashMap<Vec<usize>, usize>,
    singleton: Vec<usize>,
    /// `(t, {a,t})` for each `a`; `t = None` is the empty set.
    joins: Vec<Vec<(Option<usize>, usize)>>,
}

impl TAlphabet {
    pub fn build(spec: &GraphProductSpec, caps: &Caps) -> Result<Self, RewriteError> {
        let n = spec.num_vertices();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
        // depth-first over cliques, one letter per chosen vertex
        while let Some((next, cur)) = stack.pop() {
            if !cur.is_empty() {
                sets.push(cur.clone());
                if sets.len() > caps.t_alphabet {
                    return Err(RewriteError::TooManyTLetters(caps.t_alphabet));
                }
            }
            for v in next..n {
                if cur.iter().all(|&a| spec.adjacent(spec.vertex_of(a), v)) {
                    for &a in spec.vertex_letters(v) {
                        let mut c = cur.clone();
                        c.push(a);
                        stack.push((v + 1, c));
                    }
                }
            }
        }
        let key = |m: &Vec<usize>| {
            let mut s = m.clone();
            s.sort_unstable();
            s
        };
        sets.sort_by_key(|m| (Reverse(m.len()), key(m)));
        let mut index = FxHashMap::default();
        for (i, m) in sets.iter().enumerate() {
            index.insert(key(m), i);
        }
        let alpha = spec.alphabet();
        let names = sets
            .iter()
            .map(|m| format!("{{{}}}", m.iter().map(|&a| alpha.name(a)).collect::<Vec<_>>().join(",")))
            .collect();
        let singleton = (0..alpha.len()).map(|a| index[&vec![a]]).collect();
        let mut joins = vec![Vec::new(); alpha.len()];
        for (a, j) in joins.iter_mut().enumerate() {
            j.push((None, index[&vec![a]]));
        }
        for (t, m) in sets.iter().enumerate() {
            for a in 0..alpha.len() {
                let va = spec.vertex_of(a);
                if m.iter().all(|&b| spec.adjacent(spec.vertex_of(b), va)) {
                    let mut s = m.clone();
                    s.push(a);
                    joins[a].push((Some(t), index[&key(&s)]));
                }
            }
        }
        let letters = sets.into_iter().map(|members| TLetter { members }).collect();
        Ok(Self { letters, names, index, singleton, joins })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, t: usize) -> &TLetter {
        &self.letters[t]
    }

    pub fn weight(&self, t: usize) -> usize {
        self.letters[t].weight()
    }

    pub fn name(&self, t: usize) -> &str {
        &self.names[t]
    }

    pub fn singleton(&self, a: usize) -> usize {
        self.singleton[a]
    }

    /// Id of the set of letters `set` (any order), if it lies in `T`.
    pub fn id_of(&self, set: &[usize]) -> Option<usize> {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.index.get(&s).copied()
    }

    /// Pairs `(t, {a,t})` over `t ∈ T ∪ {∅}` with `{a,t} ∈ T`.
    pub fn joins(&self, a: usize) -> &[(Option<usize>, usize)] {
        &self.joins[a]
    }

    pub fn join(&self, a: usize, t: Option<usize>) -> Option<usize> {
        match t {
            None => Some(self.singleton[a]),
            Some(t) => {
                let mut s = self.letters[t].members.clone();
                s.push(a);
                self.id_of(&s)
            }
        }
    }

    /// `h`: each letter listed by ascending vertex index.
    pub fn h(&self, w: &[usize]) -> Word {
        w.iter().flat_map(|&t| self.letters[t].members.iter().copied()).collect()
    }

    pub fn embed(&self, w: &[usize]) -> Word {
        w.iter().map(|&a| self.singleton[a]).collect()
    }

    pub fn total_weight(&self, w: &[usize]) -> usize {
        w.iter().map(|&t| self.weight(t)).sum()
    }

    pub fn render(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&t| self.name(t)).collect::<Vec<_>>().join(" ")
    }

    /// Parse `{a1,a2} a3`; bare names are singletons, `1` is the empty word.
    pub fn parse(&self, spec: &GraphProductSpec, s: &str) -> Result<Word, RewriteError> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let (tok, tail) = if let Some(r) = rest.strip_prefix('{') {
                let end = r.find('}').ok_or_else(|| RewriteError::Parse(format!("unclosed brace in {s:?}")))?;
                (&r[..end], &r[end + 1..])
            } else {
                let end = rest.find(|c: char| c.is_whitespace() || c == '{').unwrap_or(rest.len());
                (&rest[..end], &rest[end..])
            };
            let mut ids = Vec::new();
            for name in tok.split(',').map(str::trim) {
                let a = spec.alphabet().id_of(name).ok_or_else(|| RewriteError::Parse(format!("unknown letter {name:?}")))?;
                ids.push(a);
            }
            let t = self.id_of(&ids).ok_or_else(|| RewriteError::NotInT(tok.to_string()))?;
            out.push(t);
            rest = tail.trim_start();
        }
        Ok(out)
    }
}
