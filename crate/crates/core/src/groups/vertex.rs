use std::sync::Arc;

use crate::fsa::{Alphabet, Dfa, Letter, Word};

use super::finite::FiniteGroupTable;
use super::GroupError;

/// Meaning of a local letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalLetter {
    /// A generator of a finite group.
    Elem(usize),
    /// `x_index` or its inverse in a free group (rank 1 for `Z`).
    Gen { index: usize, inverse: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Finite(Arc<FiniteGroupTable>),
    InfiniteCyclic,
    Free { rank: usize },
}

/// A vertex group with its inverse-closed generating set, letters listed in
/// local shortlex order.
#[derive(Clone, Debug)]
pub struct VertexGroup {
    kind: VertexKind,
    letters: Vec<LocalLetter>,
    names: Vec<String>,
    inverse: Vec<usize>,
    finite: Option<FiniteData>,
}

#[derive(Clone, Debug)]
struct FiniteData {
    len: Vec<usize>,
    clen: Vec<usize>,
    class: Vec<usize>,
    /// shortlex-least geodesic of each element
    sl: Vec<Word>,
}

impl VertexGroup {
    /// Finite group with generators `gens`; names default to element names.
    pub fn finite(table: Arc<FiniteGroupTable>, gens: &[usize], names: Option<Vec<String>>) -> Result<Self, GroupError> {
        table.validate_gens(gens)?;
        let names = match names {
            Some(n) if n.len() != gens.len() => {
                return Err(GroupError::Gens(format!("{} letter names for {} generators", n.len(), gens.len())))
            }
            Some(n) => n,
            None => gens.iter().map(|&g| table.name(g).to_string()).collect(),
        };
        let letters = gens.iter().map(|&g| LocalLetter::Elem(g)).collect();
        Self::assemble(VertexKind::Finite(table), letters, names)
    }

    /// Finite group generated by all non-identity elements.
    pub fn finite_full(table: Arc<FiniteGroupTable>) -> Self {
        let gens: Vec<usize> = (0..table.order()).filter(|&g| g != table.identity()).collect();
        Self::finite(table, &gens, None).expect("full generating set")
    }

    /// `Z` over `{x, x^-1}`; `names` lists the generator then its inverse.
    pub fn infinite_cyclic(names: Option<[String; 2]>) -> Result<Self, GroupError> {
        let names = names.unwrap_or_else(|| ["a".to_string(), "a^-1".to_string()]);
        let letters = vec![LocalLetter::Gen { index: 0, inverse: false }, LocalLetter::Gen { index: 0, inverse: true }];
        Self::assemble(VertexKind::InfiniteCyclic, letters, names.to_vec())
    }

    /// Free group of rank `r`; names list `x1, x1^-1, x2, x2^-1, ...`.
    pub fn free(rank: usize, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::Gens("free group rank must be at least 1".into()));
        }
        let names = match names {
            Some(n) if n.len() != 2 * rank => {
                return Err(GroupError::Gens(format!("free group of rank {rank} needs {} letter names", 2 * rank)))
            }
            Some(n) => n,
            None if rank == 1 => vec!["a".into(), "a^-1".into()],
            None => (1..=rank).flat_map(|i| [format!("a{i}"), format!("a{i}^-1")]).collect(),
        };
        let letters = (0..rank)
            .flat_map(|i| [LocalLetter::Gen { index: i, inverse: false }, LocalLetter::Gen { index: i, inverse: true }])
            .collect();
        Self::assemble(VertexKind::Free { rank }, letters, names)
    }

    fn assemble(kind: VertexKind, letters: Vec<LocalLetter>, names: Vec<String>) -> Result<Self, GroupError> {
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(char::is_whitespace) || n == "$" {
                return Err(GroupError::Gens(format!("invalid letter name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(GroupError::Gens(format!("duplicate letter name {n}")));
            }
        }
        let inverse = letters
            .iter()
            .map(|l| {
                let target = match (&kind, *l) {
                    (VertexKind::Finite(t), LocalLetter::Elem(g)) => LocalLetter::Elem(t.inv(g)),
                    (_, LocalLetter::Gen { index, inverse }) => LocalLetter::Gen { index, inverse: !inverse },
                    _ => unreachable!("letter kind matches group kind"),
                };
                letters.iter().position(|x| *x == target).expect("inverse-closed")
            })
            .collect();
        let mut v = Self { kind, letters, names, inverse, finite: None };
        v.refresh();
        Ok(v)
    }

    fn refresh(&mut self) {
        let VertexKind::Finite(t) = &self.kind else {
            self.finite = None;
            return;
        };
        let gens = self.gens();
        let len = t.word_lengths(&gens);
        let clen = t.conj_lengths(&gens);
        let class = t.class_index();
        let mut order: Vec<usize> = (0..t.order()).collect();
        order.sort_by_key(|&g| len[g]);
        let mut sl: Vec<Word> = vec![Vec::new(); t.order()];
        for g in order {
            if len[g] == 0 {
                continue;
            }
            // first letter: least a with |a^-1 g| = |g| - 1
            let (j, rest) = self
                .letters
                .iter()
                .enumerate()
                .find_map(|(j, l)| {
                    let LocalLetter::Elem(a) = *l else { unreachable!() };
                    let h = t.mul(t.inv(a), g);
                    (len[h] + 1 == len[g]).then_some((j, h))
                })
                .expect("geodesic predecessor exists");
            let mut w = vec![j];
            w.extend_from_slice(&sl[rest]);
            sl[g] = w;
        }
        self.finite = Some(FiniteData { len, clen, class, sl });
    }

    /// Reorder letters by a key (the global shortlex rank).
    pub fn sorted_by_key<K: Ord>(self, key: impl Fn(&str) -> K) -> Self {
        let mut idx: Vec<usize> = (0..self.letters.len()).collect();
        idx.sort_by_key(|&i| key(&self.names[i]));
        let letters = idx.iter().map(|&i| self.letters[i]).collect();
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        Self::assemble(self.kind, letters, names).expect("permutation of a valid vertex")
    }

    /// Same group with new letter names (in current local order).
    pub fn renamed(self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.letters.len() {
            return Err(GroupError::Gens(format!("{} names for {} letters", names.len(), self.letters.len())));
        }
        Self::assemble(self.kind, self.letters, names)
    }

    pub fn kind(&self) -> &VertexKind {
        &self.kind
    }

    pub fn table(&self) -> Option<&Arc<FiniteGroupTable>> {
        match &self.kind {
            VertexKind::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite.is_some()
    }

    pub fn type_name(&self) -> &'static str {
        match self.kind {
            VertexKind::Finite(_) => "finite",
            VertexKind::InfiniteCyclic => "cyclic_inf",
            VertexKind::Free { .. } => "free",
        }
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[LocalLetter] {
        &self.letters
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, j: usize) -> &str {
        &self.names[j]
    }

    pub fn inverse(&self, j: usize) -> usize {
        self.inverse[j]
    }

    /// Generators as group elements (finite groups only; empty otherwise).
    pub fn gens(&self) -> Vec<usize> {
        self.letters
            .iter()
            .filter_map(|l| match l {
                LocalLetter::Elem(g) => Some(*g),
                _ => None,
            })
            .collect()
    }

    /// Local letters as an alphabet tagged with vertex `vertex`.
    pub fn local_alphabet(&self, vertex: usize) -> Alphabet {
        let letters = self
            .names
            .iter()
            .enumerate()
            .map(|(id, n)| Letter { id, name: n.clone(), vertex: Some(vertex), inverse: Some(self.inverse[id]) })
            .collect();
        Alphabet::new(letters).expect("vertex alphabet")
    }

    /// Element of a finite vertex group represented by a local word.
    pub fn eval(&self, w: &[usize]) -> Option<usize> {
        let t = self.table()?;
        Some(w.iter().fold(t.identity(), |g, &j| match self.letters[j] {
            LocalLetter::Elem(a) => t.mul(g, a),
            _ => unreachable!(),
        }))
    }

    fn free_reduce(&self, w: &[usize]) -> Word {
        let mut out: Word = Vec::with_capacity(w.len());
        for &j in w {
            if out.last() == Some(&self.inverse[j]) {
                out.pop();
            } else {
                out.push(j);
            }
        }
        out
    }

    fn cyclically_reduced_len(&self, w: &[usize]) -> usize {
        let r = self.free_reduce(w);
        let mut lo = 0;
        let mut hi = r.len();
        while hi - lo >= 2 && r[hi - 1] == self.inverse[r[lo]] {
            lo += 1;
            hi -= 1;
        }
        hi - lo
    }

    /// `|pi(w)|`.
    pub fn element_length(&self, w: &[usize]) -> usize {
        match &self.finite {
            Some(f) => f.len[self.eval(w).expect("finite")],
            None => self.free_reduce(w).len(),
        }
    }

    /// `|pi(w)|_c`.
    pub fn element_conj_length(&self, w: &[usize]) -> usize {
        match &self.finite {
            Some(f) => f.clen[self.eval(w).expect("finite")],
            None => self.cyclically_reduced_len(w),
        }
    }

    pub fn is_geodesic(&self, w: &[usize]) -> bool {
        self.element_length(w) == w.len()
    }

    pub fn is_conj_geodesic(&self, w: &[usize]) -> bool {
        self.element_conj_length(w) == w.len()
    }

    /// Shortlex-least word representing the same element.
    pub fn normal_form(&self, w: &[usize]) -> Word {
        match &self.finite {
            Some(f) => f.sl[self.eval(w).expect("finite")].clone(),
            None => self.free_reduce(w),
        }
    }

    /// Whether two local words represent conjugate elements.
    pub fn are_conjugate(&self, u: &[usize], v: &[usize]) -> bool {
        match &self.finite {
            Some(f) => f.class[self.eval(u).expect("finite")] == f.class[self.eval(v).expect("finite")],
            None => {
                let cu = self.cyclic_core(u);
                let cv = self.cyclic_core(v);
                cu.len() == cv.len() && (cu.is_empty() || (0..cu.len()).any(|r| rotate(&cu, r) == cv))
            }
        }
    }

    fn cyclic_core(&self, w: &[usize]) -> Word {
        let r = self.free_reduce(w);
        let mut lo = 0;
        let mut hi = r.len();
        while hi - lo >= 2 && r[hi - 1] == self.inverse[r[lo]] {
            lo += 1;
            hi -= 1;
        }
        r[lo..hi].to_vec()
    }

    /// All geodesic words for the element of a finite group.
    fn geodesics_of(&self, g: usize) -> Vec<Word> {
        let t = self.table().expect("finite");
        let len = &self.finite.as_ref().expect("finite").len;
        if len[g] == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (j, l) in self.letters.iter().enumerate() {
            let LocalLetter::Elem(a) = *l else { unreachable!() };
            let h = t.mul(g, t.inv(a));
            if len[h] + 1 == len[g] {
                for mut w in self.geodesics_of(h) {
                    w.push(j);
                    out.push(w);
                }
            }
        }
        out
    }

    /// Words of the same length representing the same element as the
    /// geodesic `w` (the targets of a local exchange).
    pub fn same_length_equal_words(&self, w: &[usize]) -> Vec<Word> {
        match self.eval(w) {
            Some(g) => self.geodesics_of(g),
            None => vec![w.to_vec()],
        }
    }

    /// Words of the same length representing conjugates of the element of
    /// the conjugacy geodesic `w` (the targets of a conjugacy exchange).
    pub fn same_length_conjugate_words(&self, w: &[usize]) -> Vec<Word> {
        match &self.finite {
            Some(f) => {
                let g = self.eval(w).expect("finite");
                let t = self.table().expect("finite");
                let mut out = Vec::new();
                for h in 0..t.order() {
                    if f.class[h] == f.class[g] && f.len[h] == w.len() {
                        out.extend(self.geodesics_of(h));
                    }
                }
                out
            }
            None => {
                let mut out: Vec<Word> = (0..w.len().max(1)).map(|r| rotate(w, r)).collect();
                out.sort();
                out.dedup();
                out
            }
        }
    }

    /// Geo automaton over the local alphabet (`alphabet` must have exactly
    /// the local letters, in order).
    pub fn geodesic_dfa(&self, alphabet: Arc<Alphabet>) -> Dfa {
        assert_eq!(alphabet.len(), self.num_letters());
        match &self.finite {
            Some(_) => self.geodesic_dfa_unminimized_finite(alphabet).minimize(),
            None => {
                let k = self.num_letters();
                let dead = k + 1;
                Dfa::from_fn(alphabet, k + 2, 0, |q| q != dead, |q, j| {
                    if q == dead || (q > 0 && j == self.inverse[q - 1]) {
                        dead
                    } else {
                        j + 1
                    }
                })
                .minimize()
            }
        }
    }

    /// ConjGeo automaton over the local alphabet.
    ///
    /// Since `|g|_c <= |g| <= l(w)`, a word is a conjugacy geodesic iff it is
    /// geodesic and `|g|_c = |g|`; for finite groups this is the Geo automaton
    /// with accept set `{g : |g|_c = |g|}`.
    pub fn conj_geodesic_dfa(&self, alphabet: Arc<Alphabet>) -> Dfa {
        assert_eq!(alphabet.len(), self.num_letters());
        match &self.finite {
            Some(f) => {
                let geo = self.geodesic_dfa_unminimized_finite(alphabet);
                let acc = (0..geo.num_states())
                    .map(|q| q < f.len.len() && f.len[q] == f.clen[q])
                    .collect();
                geo.with_accepting(acc).minimize()
            }
            None => {
                // cyclically reduced words: states start, (first, last), dead
                let k = self.num_letters();
                let dead = 1 + k * k;
                let inv = &self.inverse;
                Dfa::from_fn(
                    alphabet,
                    dead + 1,
                    0,
                    |q| q == 0 || (q != dead && (q - 1) % k != inv[(q - 1) / k]),
                    |q, j| {
                        if q == dead {
                            dead
                        } else if q == 0 {
                            1 + j * k + j
                        } else {
                            let (first, last) = ((q - 1) / k, (q - 1) % k);
                            if j == inv[last] {
                                dead
                            } else {
                                1 + first * k + j
                            }
                        }
                    },
                )
                .minimize()
            }
        }
    }

    fn geodesic_dfa_unminimized_finite(&self, alphabet: Arc<Alphabet>) -> Dfa {
        let f = self.finite.as_ref().expect("finite");
        let t = self.table().expect("finite");
        let n = t.order();
        let gens = self.gens();
        Dfa::from_fn(alphabet, n + 1, t.identity(), |q| q != n, |q, j| {
            if q == n {
                return n;
            }
            let h = t.mul(q, gens[j]);
            if f.len[h] == f.len[q] + 1 {
                h
            } else {
                n
            }
        })
    }

    /// One shortlex-least conjugacy-geodesic word per conjugacy class
    /// (finite groups only), in shortlex order.
    pub fn conj_sl_words(&self) -> Option<Vec<Word>> {
        let f = self.finite.as_ref()?;
        let t = self.table()?;
        let mut out: Vec<Word> = t
            .conjugacy_classes()
            .iter()
            .map(|cls| {
                let m = cls.iter().map(|&g| f.len[g]).min().unwrap_or(0);
                cls.iter().filter(|&&g| f.len[g] == m).map(|&g| f.sl[g].clone()).min().expect("nonempty class")
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Some(out)
    }

    /// Number of conjugacy classes other than the identity's (finite only).
    pub fn nontrivial_class_count(&self) -> Option<usize> {
        Some(self.table()?.conjugacy_classes().len() - 1)
    }
}

fn rotate(w: &[usize], r: usize) -> Word {
    if w.is_empty() {
        return Vec::new();
    }
    let r = r % w.len();
    w[r..].iter().chain(&w[..r]).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::strict_growth_series;
    use crate::series::RationalFunction;

    fn alpha(v: &VertexGroup) -> Arc<Alphabet> {
        Arc::new(v.local_alphabet(0))
    }

    #[test]
    fn z2_geodesics() {
        let v = VertexGroup::finite_full(Arc::new(FiniteGroupTable::cyclic(2)));
        let d = v.geodesic_dfa(alpha(&v));
        assert_eq!(d.enumerate_words(4), vec![vec![], vec![0]]);
    }

    #[test]
    fn full_generating_set_geo_is_letters_and_empty() {
        let v = VertexGroup::finite_full(Arc::new(FiniteGroupTable::symmetric3()));
        let geo = v.geodesic_dfa(alpha(&v));
        let cg = v.conj_geodesic_dfa(alpha(&v));
        assert_eq!(geo.enumerate_words(3).len(), 6);
        assert!(geo.equivalent(&cg).unwrap());
    }

    #[test]
    fn z_series_and_free_reduction() {
        let v = VertexGroup::infinite_cyclic(None).unwrap();
        let cg = v.conj_geodesic_dfa(alpha(&v));
        assert_eq!(strict_growth_series(&cg), RationalFunction::from_i64s(&[1, 1], &[1, -1]).unwrap());
        assert!(!v.geodesic_dfa(alpha(&v)).accepts(&[0, 1]).unwrap());
        assert_eq!(cg.live_state_count(), 3);
    }

    #[test]
    fn f2_conj_geodesics() {
        let v = VertexGroup::free(2, Some(["a", "a^-1", "b", "b^-1"].map(String::from).to_vec())).unwrap();
        let cg = v.conj_geodesic_dfa(alpha(&v));
        assert!(!cg.accepts(&[0, 2, 1]).unwrap());
        assert!(cg.accepts(&[0, 2, 0]).unwrap());
        assert!(cg.is_subset(&v.geodesic_dfa(alpha(&v))).unwrap());
    }

    #[test]
    fn conj_sl_examples() {
        let s3 = VertexGroup::finite_full(Arc::new(FiniteGroupTable::symmetric3()));
        let names: Vec<Vec<&str>> = s3
            .conj_sl_words()
            .unwrap()
            .iter()
            .map(|w| w.iter().map(|&j| s3.name(j)).collect())
            .collect();
        assert_eq!(names, vec![vec![], vec!["t1"], vec!["r1"]]);
        let z3 = VertexGroup::finite_full(Arc::new(FiniteGroupTable::cyclic(3)));
        assert_eq!(z3.conj_sl_words().unwrap(), vec![vec![], vec![0], vec![1]]);
        let triv = VertexGroup::finite(Arc::new(FiniteGroupTable::cyclic(1)), &[], None).unwrap();
        assert_eq!(triv.conj_sl_words().unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn conj_geo_inside_geo_for_z4() {
        let t = Arc::new(FiniteGroupTable::cyclic(4));
        let v = VertexGroup::finite(t, &[1, 3], None).unwrap();
        let a = alpha(&v);
        assert!(v.conj_geodesic_dfa(a.clone()).is_subset(&v.geodesic_dfa(a)).unwrap());
        assert_eq!(v.same_length_equal_words(&[0, 0]), vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn free_conjugacy() {
        let v = VertexGroup::free(2, None).unwrap();
        // a b A ~ b
        assert!(v.are_conjugate(&[0, 2, 1], &[2]));
        assert!(!v.are_conjugate(&[0, 2], &[0, 0]));
        assert_eq!(v.same_length_conjugate_words(&[0, 2]), vec![vec![0, 2], vec![2, 0]]);
    }
}
