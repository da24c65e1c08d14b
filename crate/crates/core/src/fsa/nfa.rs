use std::collections::HashMap;
use std::sync::Arc;

use super::alphabet::Alphabet;
use super::dfa::Dfa;
use super::FsaError;

/// Nondeterministic automaton with epsilon moves (`None` labels).
#[derive(Clone, Debug)]
pub struct Fsa {
    alphabet: Arc<Alphabet>,
    edges: Vec<Vec<(Option<usize>, usize)>>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
}

impl Fsa {
    pub fn new(
        alphabet: Arc<Alphabet>,
        num_states: usize,
        transitions: &[(usize, Option<usize>, usize)],
        initial: Vec<usize>,
        accepting: Vec<usize>,
    ) -> Result<Self, FsaError> {
        let mut edges = vec![Vec::new(); num_states];
        for &(p, a, q) in transitions {
            if p >= num_states || q >= num_states {
                return Err(FsaError::Malformed(format!("transition {p} -> {q} leaves the state set")));
            }
            if let Some(a) = a {
                if a >= alphabet.len() {
                    return Err(FsaError::UnknownLetter(a));
                }
            }
            edges[p].push((a, q));
        }
        if initial.iter().chain(&accepting).any(|&q| q >= num_states) {
            return Err(FsaError::Malformed("initial or accepting state out of range".into()));
        }
        let mut acc = vec![false; num_states];
        for q in accepting {
            acc[q] = true;
        }
        Ok(Self { alphabet, edges, initial, accepting: acc })
    }

    pub fn from_dfa(d: &Dfa) -> Self {
        let k = d.alphabet().len();
        let edges = (0..d.num_states())
            .map(|q| (0..k).map(|a| (Some(a), d.step(q, a))).collect())
            .collect();
        Self {
            alphabet: d.alphabet_arc().clone(),
            edges,
            initial: vec![d.start()],
            accepting: d.accepting().to_vec(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    fn check_alphabet(&self, other: &Self) -> Result<(), FsaError> {
        if self.alphabet != other.alphabet {
            return Err(FsaError::AlphabetMismatch);
        }
        Ok(())
    }

    /// Disjoint copy of `other` appended after `self`'s states.
    fn append(&mut self, other: &Self) -> usize {
        let off = self.edges.len();
        for e in &other.edges {
            self.edges.push(e.iter().map(|&(a, q)| (a, q + off)).collect());
        }
        self.accepting.extend(&other.accepting);
        off
    }

    pub fn union(&self, other: &Self) -> Result<Self, FsaError> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        let off = out.append(other);
        out.initial.extend(other.initial.iter().map(|&q| q + off));
        Ok(out)
    }

    pub fn concatenation(&self, other: &Self) -> Result<Self, FsaError> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        let n = out.edges.len();
        let off = out.append(other);
        for q in 0..n {
            if out.accepting[q] {
                out.accepting[q] = false;
                for &i in &other.initial {
                    out.edges[q].push((None, i + off));
                }
            }
        }
        Ok(out)
    }

    pub fn star(&self) -> Self {
        let mut out = self.clone();
        let hub = out.edges.len();
        out.edges.push(self.initial.iter().map(|&i| (None, i)).collect());
        out.accepting.push(true);
        for q in 0..hub {
            if out.accepting[q] {
                out.edges[q].push((None, hub));
            }
        }
        out.initial = vec![hub];
        out
    }

    fn closure(&self, set: &mut Vec<usize>) {
        let mut seen = vec![false; self.edges.len()];
        for &q in set.iter() {
            seen[q] = true;
        }
        let mut stack = set.clone();
        while let Some(q) = stack.pop() {
            for &(a, p) in &self.edges[q] {
                if a.is_none() && !seen[p] {
                    seen[p] = true;
                    set.push(p);
                    stack.push(p);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
    }

    /// Subset construction; the empty subset becomes the dead state.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut start = self.initial.clone();
        self.closure(&mut start);
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        ids.insert(start, 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            for a in 0..k {
                let mut next: Vec<usize> = sets[i]
                    .iter()
                    .flat_map(|&q| self.edges[q].iter().filter(|(b, _)| *b == Some(a)).map(|&(_, p)| p))
                    .collect();
                self.closure(&mut next);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        ids.insert(next.clone(), sets.len());
                        sets.push(next);
                        sets.len() - 1
                    }
                };
                trans.push(id);
            }
            i += 1;
        }
        let accepting = sets.iter().map(|s| s.iter().any(|&q| self.accepting[q])).collect();
        Dfa::new(self.alphabet.clone(), trans, 0, accepting).expect("subset construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Arc<Alphabet> {
        Arc::new(Alphabet::plain(&["a", "b"]))
    }

    #[test]
    fn idempotent_union() {
        let a = Fsa::new(ab(), 2, &[(0, Some(0), 1)], vec![0], vec![1]).unwrap();
        let d = a.union(&a).unwrap().determinize().minimize();
        // {a}: start, accept, dead
        assert_eq!(d.num_states(), 3);
        assert_eq!(d.live_state_count(), 2);
        assert!(d.accepts(&[0]).unwrap());
        assert!(!d.accepts(&[0, 0]).unwrap());
    }

    #[test]
    fn epsilon_star_of_ab() {
        let ab_nfa = Fsa::new(ab(), 3, &[(0, Some(0), 1), (1, Some(1), 2)], vec![0], vec![2]).unwrap();
        let d = ab_nfa.star().determinize();
        for (w, ok) in [(vec![], true), (vec![0, 1], true), (vec![0, 1, 0, 1], true), (vec![0], false), (vec![1, 0], false)] {
            assert_eq!(d.accepts(&w).unwrap(), ok);
        }
    }

    #[test]
    fn rejects_foreign_alphabet() {
        let a = Fsa::new(ab(), 1, &[], vec![0], vec![0]).unwrap();
        let b = Fsa::new(Arc::new(Alphabet::plain(&["x", "y"])), 1, &[], vec![0], vec![0]).unwrap();
        assert!(matches!(a.concatenation(&b), Err(FsaError::AlphabetMismatch)));
        assert!(Fsa::new(ab(), 1, &[(0, Some(5), 0)], vec![0], vec![]).is_err());
    }
}
