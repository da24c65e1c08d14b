use std::cmp::Ordering;

use rustc_hash::FxHashMap;

use crate::fsa::Word;

/// String rewriting system over letters `0..n` with a fixed rule order.
///
/// Left sides are unique; on a duplicate the earlier rule wins.
#[derive(Clone, Debug)]
pub struct Srs {
    rules: Vec<(Word, Word)>,
    index: FxHashMap<Box<[usize]>, usize>,
    prefixes: FxHashMap<Box<[usize]>, Vec<usize>>,
    max_lhs: usize,
    lens: Vec<usize>,
    /// Dense lookup for left sides of length 2, when the alphabet is small.
    pairs: Option<(usize, Vec<u32>)>,
}

const NO_RULE: u32 = u32::MAX;
const DENSE_PAIR_LIMIT: usize = 1 << 22;

/// Position of an overlap: suffix length `at` for external ones, start of
/// the inner match for internal ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OverlapSite {
    pub first: usize,
    pub second: usize,
    pub internal: bool,
    pub at: usize,
}

/// One overlap between two rules and its two one-step reducts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub first: usize,
    pub second: usize,
    /// `second` matches inside the left side of `first`.
    pub internal: bool,
    pub word: Word,
    pub left: Word,
    pub right: Word,
}

impl Srs {
    /// Returns the system and, for each kept rule, its position in `rules`.
    pub fn new(rules: Vec<(Word, Word)>) -> (Self, Vec<usize>) {
        let mut index = FxHashMap::default();
        let mut kept = Vec::new();
        let mut out = Vec::new();
        for (i, (l, r)) in rules.into_iter().enumerate() {
            assert!(!l.is_empty(), "empty left side");
            if index.contains_key(l.as_slice()) {
                continue;
            }
            index.insert(l.clone().into_boxed_slice(), out.len());
            kept.push(i);
            out.push((l, r));
        }
        let mut prefixes: FxHashMap<Box<[usize]>, Vec<usize>> = FxHashMap::default();
        for (i, (l, _)) in out.iter().enumerate() {
            for k in 1..l.len() {
                prefixes.entry(l[..k].into()).or_default().push(i);
            }
        }
        let max_lhs = out.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let mut lens: Vec<usize> = out.iter().map(|(l, _)| l.len()).collect();
        lens.sort_unstable();
        lens.dedup();
        let n = out.iter().flat_map(|(l, r)| l.iter().chain(r)).max().map_or(0, |&m| m + 1);
        let pairs = (lens.contains(&2) && n * n <= DENSE_PAIR_LIMIT && out.len() < NO_RULE as usize).then(|| {
            let mut t = vec![NO_RULE; n * n];
            for (i, (l, _)) in out.iter().enumerate() {
                if l.len() == 2 {
                    t[l[0] * n + l[1]] = i as u32;
                }
            }
            (n, t)
        });
        (Self { rules: out, index, prefixes, max_lhs, lens, pairs }, kept)
    }

    pub fn rules(&self) -> &[(Word, Word)] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn max_lhs(&self) -> usize {
        self.max_lhs
    }

    pub fn rule_for(&self, lhs: &[usize]) -> Option<usize> {
        self.index.get(lhs).copied()
    }

    /// Every `(position, rule)` redex of `w`.
    pub fn redexes(&self, w: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..w.len() {
            let avail = (w.len() - p).min(self.max_lhs);
            out.extend((1..=avail).filter_map(|l| self.index.get(&w[p..p + l]).map(|&r| (p, r))));
        }
        out
    }

    /// Leftmost match, lowest rule index among those starting there.
    pub fn first_match(&self, w: &[usize], from: usize) -> Option<(usize, usize)> {
        for p in from..w.len() {
            let avail = w.len() - p;
            let mut best: Option<usize> = None;
            for &l in &self.lens {
                if l > avail {
                    break;
                }
                let hit = match &self.pairs {
                    Some((n, t)) if l == 2 => {
                        let (x, y) = (w[p], w[p + 1]);
                        if x < *n && y < *n && t[x * n + y] != NO_RULE {
                            Some(t[x * n + y] as usize)
                        } else {
                            None
                        }
                    }
                    _ => self.index.get(&w[p..p + l]).copied(),
                };
                if let Some(r) = hit {
                    best = Some(best.map_or(r, |b: usize| b.min(r)));
                }
            }
            if let Some(r) = best {
                return Some((p, r));
            }
        }
        None
    }

    pub fn apply_at(&self, w: &[usize], p: usize, r: usize) -> Word {
        let (l, rhs) = &self.rules[r];
        debug_assert_eq!(&w[p..p + l.len()], l.as_slice());
        let mut out = Vec::with_capacity(w.len() + rhs.len());
        out.extend_from_slice(&w[..p]);
        out.extend_from_slice(rhs);
        out.extend_from_slice(&w[p + l.len()..]);
        out
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        self.first_match(w, 0).is_none()
    }

    /// Normal form by leftmost rewriting. Callers guarantee termination.
    pub fn normal_form(&self, w: &[usize]) -> Word {
        let mut w = w.to_vec();
        self.normalize(&mut w);
        w
    }

    pub fn normalize(&self, w: &mut Word) {
        let mut from = 0;
        while let Some((p, r)) = self.first_match(w, from) {
            let (l, rhs) = &self.rules[r];
            if rhs.len() <= l.len() {
                w[p..p + rhs.len()].copy_from_slice(rhs);
                w.drain(p + rhs.len()..p + l.len());
            } else {
                w.splice(p..p + l.len(), rhs.iter().copied());
            }
            from = p.saturating_sub(self.max_lhs.saturating_sub(1));
        }
    }

    /// All overlaps whose first rule is `r`, without building words.
    pub fn overlap_sites(&self, r: usize, mut f: impl FnMut(OverlapSite)) {
        let l1 = &self.rules[r].0;
        for k in 1..l1.len() {
            // proper suffix of l1 = proper prefix of l2
            if let Some(cands) = self.prefixes.get(&l1[l1.len() - k..]) {
                for &s in cands {
                    f(OverlapSite { first: r, second: s, internal: false, at: k });
                }
            }
        }
        for i in 0..l1.len() {
            for j in i + 1..=l1.len() {
                if j - i == l1.len() {
                    continue;
                }
                if let Some(s) = self.rule_for(&l1[i..j]) {
                    f(OverlapSite { first: r, second: s, internal: true, at: i });
                }
            }
        }
    }

    /// The two one-step reducts of an overlap, written into `left` and `right`.
    pub fn reducts_into(&self, o: &OverlapSite, left: &mut Word, right: &mut Word) {
        let (l1, r1) = &self.rules[o.first];
        let (l2, r2) = &self.rules[o.second];
        left.clear();
        right.clear();
        left.extend_from_slice(r1);
        if o.internal {
            right.extend_from_slice(&l1[..o.at]);
            right.extend_from_slice(r2);
            right.extend_from_slice(&l1[o.at + l2.len()..]);
        } else {
            left.extend_from_slice(&l2[o.at..]);
            right.extend_from_slice(&l1[..l1.len() - o.at]);
            right.extend_from_slice(r2);
        }
    }

    pub fn overlap_word(&self, o: &OverlapSite) -> Word {
        let l1 = &self.rules[o.first].0;
        let mut w = l1.clone();
        if !o.internal {
            w.extend_from_slice(&self.rules[o.second].0[o.at..]);
        }
        w
    }

    pub fn materialize(&self, o: &OverlapSite) -> Overlap {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        self.reducts_into(o, &mut left, &mut right);
        Overlap { first: o.first, second: o.second, internal: o.internal, word: self.overlap_word(o), left, right }
    }

    /// All overlaps whose first rule is `r`.
    pub fn overlaps_of(&self, r: usize, mut f: impl FnMut(Overlap)) {
        self.overlap_sites(r, |o| f(self.materialize(&o)));
    }

    pub fn without_rule(&self, r: usize) -> Self {
        let mut rules = self.rules.clone();
        rules.remove(r);
        Self::new(rules).0
    }
}

/// Shortlex on letter ids.
pub fn shortlex(u: &[usize], v: &[usize]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}
