use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use super::alphabet::{Alphabet, Word};
use super::nfa::Fsa;
use super::FsaError;

/// Complete deterministic automaton with a flat `states x letters` table.
#[derive(Clone, Debug)]
pub struct Dfa {
    alphabet: Arc<Alphabet>,
    n: usize,
    trans: Vec<usize>,
    start: usize,
    accepting: Vec<bool>,
    minimal: bool,
}

impl Dfa {
    pub fn new(
        alphabet: Arc<Alphabet>,
        trans: Vec<usize>,
        start: usize,
        accepting: Vec<bool>,
    ) -> Result<Self, FsaError> {
        let n = accepting.len();
        let k = alphabet.len();
        if trans.len() != n * k {
            return Err(FsaError::Malformed(format!(
                "transition table has {} entries, expected {}",
                trans.len(),
                n * k
            )));
        }
        if n == 0 || start >= n {
            return Err(FsaError::Malformed("start state out of range".into()));
        }
        if let Some(bad) = trans.iter().position(|&t| t >= n) {
            return Err(FsaError::Malformed(format!("transition {bad} targets a missing state")));
        }
        Ok(Self { alphabet, n, trans, start, accepting, minimal: false })
    }

    /// Build from a transition closure; `delta(q, a)` must return a state `< n`.
    pub fn from_fn(
        alphabet: Arc<Alphabet>,
        n: usize,
        start: usize,
        accepting: impl Fn(usize) -> bool,
        delta: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let k = alphabet.len();
        let mut trans = Vec::with_capacity(n * k);
        for q in 0..n {
            for a in 0..k {
                trans.push(delta(q, a));
            }
        }
        let acc = (0..n).map(accepting).collect();
        Self::new(alphabet, trans, start, acc).expect("well-formed closure automaton")
    }

    pub fn empty_language(alphabet: Arc<Alphabet>) -> Self {
        let k = alphabet.len();
        Self::new(alphabet, vec![0; k], 0, vec![false]).expect("one state")
    }

    pub fn universal(alphabet: Arc<Alphabet>) -> Self {
        let k = alphabet.len();
        Self::new(alphabet, vec![0; k], 0, vec![true]).expect("one state")
    }

    /// Minimal DFA of a finite word set.
    pub fn from_words(alphabet: Arc<Alphabet>, words: &[Word]) -> Result<Self, FsaError> {
        let k = alphabet.len();
        // trie with state 0 = dead, 1 = root
        let mut trans = vec![0usize; 2 * k];
        let mut acc = vec![false, false];
        for w in words {
            let mut q = 1;
            for &a in w {
                if a >= k {
                    return Err(FsaError::UnknownLetter(a));
                }
                if trans[q * k + a] == 0 {
                    trans[q * k + a] = acc.len();
                    acc.push(false);
                    trans.extend(std::iter::repeat_n(0, k));
                }
                q = trans[q * k + a];
            }
            acc[q] = true;
        }
        Ok(Self::new(alphabet, trans, 1, acc)?.minimize())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    #[inline]
    pub fn step(&self, q: usize, a: usize) -> usize {
        self.trans[q * self.alphabet.len() + a]
    }

    /// State reached from `q` after reading `w`; letters must be in range.
    pub fn run_from(&self, q: usize, w: &[usize]) -> usize {
        w.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &[usize]) -> Result<bool, FsaError> {
        if let Some(&bad) = w.iter().find(|&&a| a >= self.alphabet.len()) {
            return Err(FsaError::UnknownLetter(bad));
        }
        Ok(self.accepting[self.run_from(self.start, w)])
    }

    /// Same automaton read over another alphabet of identical size.
    pub fn relabel(&self, alphabet: Arc<Alphabet>) -> Result<Self, FsaError> {
        if alphabet.len() != self.alphabet.len() {
            return Err(FsaError::AlphabetMismatch);
        }
        Ok(Self { alphabet, ..self.clone() })
    }

    pub fn with_start(&self, start: usize) -> Self {
        Self { start, minimal: false, ..self.clone() }
    }

    pub fn with_accepting(&self, accepting: Vec<bool>) -> Self {
        assert_eq!(accepting.len(), self.n);
        Self { accepting, minimal: false, ..self.clone() }
    }

    pub fn complement(&self) -> Self {
        let accepting = self.accepting.iter().map(|&b| !b).collect();
        Self { accepting, minimal: self.minimal, ..self.clone() }
    }

    fn reachable(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut seen = vec![false; self.n];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(q) = stack.pop() {
            for a in 0..k {
                let p = self.step(q, a);
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for q in 0..self.n {
            for a in 0..k {
                rev[self.step(q, a)].push(q);
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = (0..self.n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// States both reachable from the start and co-reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let r = self.reachable();
        let c = self.coreachable();
        r.iter().zip(&c).map(|(&x, &y)| x && y).collect()
    }

    pub fn live_state_count(&self) -> usize {
        self.live_states().iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.coreachable()[self.start]
    }

    /// Hopcroft partition refinement on the reachable part.
    pub fn minimize(&self) -> Self {
        if self.minimal {
            return self.clone();
        }
        let k = self.alphabet.len();
        let reach = self.reachable();
        let old: Vec<usize> = (0..self.n).filter(|&q| reach[q]).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &q) in old.iter().enumerate() {
            index[q] = i;
        }
        let m = old.len();
        let delta = |i: usize, a: usize| index[self.step(old[i], a)];

        let mut inv: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); m]; k];
        for i in 0..m {
            for (a, inv_a) in inv.iter_mut().enumerate() {
                inv_a[delta(i, a)].push(i);
            }
        }

        let acc: Vec<usize> = (0..m).filter(|&i| self.accepting[old[i]]).collect();
        let rej: Vec<usize> = (0..m).filter(|&i| !self.accepting[old[i]]).collect();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0usize; m];
        for part in [acc, rej] {
            if !part.is_empty() {
                for &i in &part {
                    block_of[i] = blocks.len();
                }
                blocks.push(part);
            }
        }
        let mut in_work: Vec<Vec<bool>> = Vec::new();
        let mut work: VecDeque<(usize, usize)> = VecDeque::new();
        let smallest = (0..blocks.len()).min_by_key(|&b| blocks[b].len()).unwrap_or(0);
        for b in 0..blocks.len() {
            in_work.push(vec![false; k]);
            if blocks.len() == 1 || b == smallest {
                for a in 0..k {
                    in_work[b][a] = true;
                    work.push_back((b, a));
                }
            }
        }

        let mut marked = vec![false; m];
        while let Some((b, a)) = work.pop_front() {
            in_work[b][a] = false;
            let mut touched: Vec<usize> = Vec::new();
            let mut hits: HashMap<usize, Vec<usize>> = HashMap::new();
            for &t in &blocks[b] {
                for &s in &inv[a][t] {
                    if !marked[s] {
                        marked[s] = true;
                        let y = block_of[s];
                        let e = hits.entry(y).or_default();
                        if e.is_empty() {
                            touched.push(y);
                        }
                        e.push(s);
                    }
                }
            }
            touched.sort_unstable();
            for y in touched {
                let inside = hits.remove(&y).unwrap_or_default();
                if inside.len() < blocks[y].len() {
                    let outside: Vec<usize> = blocks[y].iter().copied().filter(|&s| !marked[s]).collect();
                    let new_id = blocks.len();
                    for &s in &inside {
                        block_of[s] = new_id;
                    }
                    blocks[y] = outside;
                    blocks.push(inside);
                    in_work.push(vec![false; k]);
                    for c in 0..k {
                        if in_work[y][c] {
                            in_work[new_id][c] = true;
                            work.push_back((new_id, c));
                        } else {
                            let pick = if blocks[y].len() <= blocks[new_id].len() { y } else { new_id };
                            in_work[pick][c] = true;
                            work.push_back((pick, c));
                        }
                    }
                    for &s in &blocks[new_id] {
                        marked[s] = false;
                    }
                } else {
                    for &s in &inside {
                        marked[s] = false;
                    }
                }
            }
        }

        // Renumber blocks in BFS order from the start for a canonical layout.
        let start_block = block_of[index[self.start]];
        let mut order = vec![usize::MAX; blocks.len()];
        let mut queue = VecDeque::from([start_block]);
        order[start_block] = 0;
        let mut next = 1;
        let mut trans = Vec::with_capacity(blocks.len() * k);
        let mut accepting = Vec::with_capacity(blocks.len());
        let mut seq = Vec::with_capacity(blocks.len());
        while let Some(b) = queue.pop_front() {
            seq.push(b);
            let rep = blocks[b][0];
            for a in 0..k {
                let t = block_of[delta(rep, a)];
                if order[t] == usize::MAX {
                    order[t] = next;
                    next += 1;
                    queue.push_back(t);
                }
            }
        }
        for &b in &seq {
            let rep = blocks[b][0];
            accepting.push(self.accepting[old[rep]]);
            for a in 0..k {
                trans.push(order[block_of[delta(rep, a)]]);
            }
        }
        let mut out = Self::new(self.alphabet.clone(), trans, 0, accepting).expect("minimized automaton");
        out.minimal = true;
        out
    }

    fn product(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Result<Self, FsaError> {
        if self.alphabet != other.alphabet {
            return Err(FsaError::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k {
                let t = (self.step(p, a), other.step(q, a));
                let id = *ids.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    pairs.len() - 1
                });
                trans.push(id);
            }
            i += 1;
        }
        let accepting = pairs.iter().map(|&(p, q)| keep(self.accepting[p], other.accepting[q])).collect();
        Self::new(self.alphabet.clone(), trans, 0, accepting)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, FsaError> {
        self.product(other, |a, b| a && b)
    }

    /// Union via the product construction; stays deterministic.
    pub fn union(&self, other: &Self) -> Result<Self, FsaError> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self, FsaError> {
        self.product(other, |a, b| a && !b)
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, FsaError> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Language equality via isomorphism of minimal automata.
    pub fn equivalent(&self, other: &Self) -> Result<bool, FsaError> {
        if self.alphabet != other.alphabet {
            return Err(FsaError::AlphabetMismatch);
        }
        let (a, b) = (self.minimize(), other.minimize());
        // minimize numbers states canonically by BFS order
        Ok(a.n == b.n && a.trans == b.trans && a.accepting == b.accepting)
    }

    /// `{ w in X* : h(w) in L(self) }` where `images[a]` is `h(a)`.
    pub fn inverse_homomorphism(&self, domain: Arc<Alphabet>, images: &[Word]) -> Result<Self, FsaError> {
        if images.len() != domain.len() {
            return Err(FsaError::Malformed("one image per domain letter required".into()));
        }
        if let Some(&bad) = images.iter().flatten().find(|&&a| a >= self.alphabet.len()) {
            return Err(FsaError::UnknownLetter(bad));
        }
        let me = self;
        Ok(Self::from_fn(domain, self.n, self.start, |q| me.accepting[q], |q, a| me.run_from(q, &images[a])))
    }

    pub fn to_fsa(&self) -> Fsa {
        Fsa::from_dfa(self)
    }

    pub fn concat(&self, other: &Self) -> Result<Self, FsaError> {
        Ok(self.to_fsa().concatenation(&other.to_fsa())?.determinize().minimize())
    }

    pub fn star(&self) -> Self {
        self.to_fsa().star().determinize().minimize()
    }

    /// Number of accepted words of each length `0..=n`.
    pub fn counts_up_to(&self, n: usize) -> Vec<BigUint> {
        let k = self.alphabet.len();
        let mut v: Vec<BigUint> = vec![BigUint::zero(); self.n];
        v[self.start] = BigUint::from(1u32);
        let live = self.coreachable();
        let mut out = Vec::with_capacity(n + 1);
        for len in 0..=n {
            let total: BigUint = (0..self.n).filter(|&q| self.accepting[q]).map(|q| &v[q]).sum();
            out.push(total);
            if len == n {
                break;
            }
            let mut next = vec![BigUint::zero(); self.n];
            for q in 0..self.n {
                if v[q].is_zero() || !live[q] {
                    continue;
                }
                for a in 0..k {
                    let p = self.step(q, a);
                    if live[p] {
                        next[p] += &v[q];
                    }
                }
            }
            v = next;
        }
        out
    }

    pub fn count_words_of_length(&self, n: usize) -> BigUint {
        self.counts_up_to(n).pop().unwrap_or_default()
    }

    /// Accepted words of length `<= max_len` in shortlex order.
    pub fn enumerate_words(&self, max_len: usize) -> Vec<Word> {
        let k = self.alphabet.len();
        let live = self.coreachable();
        let mut out = Vec::new();
        if !live[self.start] {
            return out;
        }
        let mut level: Vec<(Word, usize)> = vec![(Vec::new(), self.start)];
        for len in 0..=max_len {
            out.extend(level.iter().filter(|(_, q)| self.accepting[*q]).map(|(w, _)| w.clone()));
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &level {
                for a in 0..k {
                    let p = self.step(*q, a);
                    if live[p] {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((w2, p));
                    }
                }
            }
            level = next;
        }
        out
    }

    /// For each state `q_j`: `(L_j, Lbar_j)` where `L_j` drives the start to
    /// `q_j` and `Lbar_j` drives `q_j` into acceptance.
    pub fn per_state_decomposition(&self) -> Vec<(Dfa, Dfa)> {
        (0..self.n)
            .map(|j| {
                let mut acc = vec![false; self.n];
                acc[j] = true;
                (self.with_accepting(acc), self.with_start(j))
            })
            .collect()
    }

    /// Graphviz rendering of the live part; the dead state is left implicit.
    pub fn to_dot(&self) -> String {
        let live = self.live_states();
        let k = self.alphabet.len();
        let mut s = String::from("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n");
        let _ = writeln!(s, "  start -> q{};", self.start);
        for q in 0..self.n {
            if !live[q] && q != self.start {
                continue;
            }
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  q{q} [shape={shape}];");
        }
        for q in 0..self.n {
            if !live[q] {
                continue;
            }
            let mut grouped: Vec<(usize, Vec<&str>)> = Vec::new();
            for a in 0..k {
                let p = self.step(q, a);
                if !live[p] {
                    continue;
                }
                match grouped.iter_mut().find(|(t, _)| *t == p) {
                    Some((_, names)) => names.push(self.alphabet.name(a)),
                    None => grouped.push((p, vec![self.alphabet.name(a)])),
                }
            }
            for (p, names) in grouped {
                let label = names.join(",").replace('"', "\\\"");
                let _ = writeln!(s, "  q{q} -> q{p} [label=\"{label}\"];");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Arc<Alphabet> {
        Arc::new(Alphabet::plain(&["a", "b"]))
    }

    /// 10-state chain all accepting, looping on `a`, dead on `b`.
    fn redundant_a_star() -> Dfa {
        let n = 11;
        Dfa::from_fn(ab(), n, 0, |q| q < 10, |q, a| if q == 10 || a == 1 { 10 } else { (q + 1) % 10 })
    }

    #[test]
    fn minimize_collapses_redundant_states() {
        let m = redundant_a_star().minimize();
        assert_eq!(m.num_states(), 2);
        assert!(m.accepts(&[0, 0, 0]).unwrap());
        assert!(!m.accepts(&[0, 1]).unwrap());
        assert!(m.minimize().equivalent(&m).unwrap());
        assert_eq!(m.minimize().num_states(), m.num_states());
    }

    #[test]
    fn words_and_counts() {
        let d = Dfa::from_words(ab(), &[vec![0, 1], vec![1], vec![]]).unwrap();
        assert_eq!(d.enumerate_words(5), vec![vec![], vec![1], vec![0, 1]]);
        assert_eq!(d.count_words_of_length(2), BigUint::from(1u32));
        assert_eq!(Dfa::empty_language(ab()).count_words_of_length(5), BigUint::zero());
        assert_eq!(Dfa::universal(ab()).count_words_of_length(5), BigUint::from(32u32));
    }

    #[test]
    fn accepts_rejects_unknown_letters() {
        assert!(matches!(Dfa::universal(ab()).accepts(&[2]), Err(FsaError::UnknownLetter(2))));
        assert!(Dfa::universal(ab()).accepts(&[]).unwrap());
    }

    #[test]
    fn boolean_operations() {
        let a_star = redundant_a_star();
        let empty = Dfa::empty_language(ab());
        assert!(a_star.intersection(&empty).unwrap().is_empty());
        assert!(a_star.is_subset(&Dfa::universal(ab())).unwrap());
        assert!(!Dfa::universal(ab()).is_subset(&a_star).unwrap());
        let other = Arc::new(Alphabet::plain(&["x", "y"]));
        assert!(matches!(a_star.intersection(&Dfa::universal(other)), Err(FsaError::AlphabetMismatch)));
    }

    #[test]
    fn star_of_ab() {
        let ab_word = Dfa::from_words(ab(), &[vec![0, 1]]).unwrap();
        let s = ab_word.star();
        for (w, ok) in [(vec![], true), (vec![0, 1], true), (vec![0, 1, 0, 1], true), (vec![0], false), (vec![1, 0], false)] {
            assert_eq!(s.accepts(&w).unwrap(), ok, "{w:?}");
        }
        let by_hand = Dfa::from_fn(ab(), 3, 0, |q| q == 0, |q, a| match (q, a) {
            (0, 0) => 1,
            (1, 1) => 0,
            _ => 2,
        });
        assert!(s.equivalent(&by_hand).unwrap());
    }

    #[test]
    fn inverse_homomorphism_erasing() {
        let target = Dfa::from_words(ab(), &[vec![]]).unwrap();
        let dom = Arc::new(Alphabet::plain(&["x", "y", "z"]));
        let pre = target.inverse_homomorphism(dom.clone(), &[vec![], vec![], vec![]]).unwrap();
        assert!(pre.equivalent(&Dfa::universal(dom)).unwrap());
    }

    #[test]
    fn decomposition_of_a_star_b_star() {
        let d = Dfa::from_fn(ab(), 3, 0, |q| q < 2, |q, a| match (q, a) {
            (0, 0) => 0,
            (0, 1) | (1, 1) => 1,
            _ => 2,
        });
        let parts = d.per_state_decomposition();
        let q = d.run_from(0, &[0, 0]);
        let (l, lbar) = &parts[q];
        assert!(l.accepts(&[0, 0]).unwrap());
        assert!(lbar.accepts(&[1]).unwrap());
    }

    #[test]
    fn dot_has_doublecircles_and_labels() {
        let d = Dfa::from_words(ab(), &[vec![0]]).unwrap();
        let dot = d.to_dot();
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("label=\"a\""));
    }
}
