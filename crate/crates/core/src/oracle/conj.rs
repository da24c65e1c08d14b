use crate::fsa::Word;
use crate::par;

use super::arith::GroupArith;
use super::ball::Ball;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    /// Minimal length over the explored members.
    pub min_len: usize,
    /// Shortlex-least geodesic among the minimal-length members.
    pub rep: Word,
    pub members: usize,
    /// Explored with `slack` room above the minimum.
    pub confirmed: bool,
}

/// Conjugacy classes of the ball elements, joined by conjugation by single
/// generators that stays inside the ball.
#[derive(Clone, Debug)]
pub struct ConjugacyTable {
    slack: usize,
    class_of: Vec<usize>,
    classes: Vec<ClassInfo>,
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

impl ConjugacyTable {
    pub fn build(g: &dyn GroupArith, ball: &Ball, slack: usize) -> Self {
        let alpha = g.alphabet();
        let k = alpha.len();
        let inv: Vec<Word> = (0..k).map(|x| alpha.inverse_word(&[x]).expect("inverse-closed alphabet")).collect();
        let edges: Vec<Vec<usize>> = par::map_range(ball.len(), |e| {
            let mut out = Vec::new();
            for x in 0..k {
                let mut w = inv[x].clone();
                w.extend_from_slice(ball.shortlex_word(e));
                w.push(x);
                if let Some(f) = ball.find(&g.key(&w)) {
                    if f != e {
                        out.push(f);
                    }
                }
            }
            out
        });
        let mut parent: Vec<usize> = (0..ball.len()).collect();
        for (e, nb) in edges.iter().enumerate() {
            for &f in nb {
                let (a, b) = (find(&mut parent, e), find(&mut parent, f));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut root_class = vec![usize::MAX; ball.len()];
        let mut class_of = vec![0; ball.len()];
        let mut classes: Vec<ClassInfo> = Vec::new();
        // elements are in shortlex order, so the first member of each class
        // found is its shortlex-least minimal-length word
        for e in 0..ball.len() {
            let r = find(&mut parent, e);
            if root_class[r] == usize::MAX {
                root_class[r] = classes.len();
                classes.push(ClassInfo {
                    min_len: ball.length(e),
                    rep: ball.shortlex_word(e).to_vec(),
                    members: 0,
                    confirmed: ball.length(e) + slack <= ball.radius(),
                });
            }
            class_of[e] = root_class[r];
            classes[root_class[r]].members += 1;
        }
        Self { slack, class_of, classes }
    }

    pub fn slack(&self) -> usize {
        self.slack
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_of(&self, e: usize) -> &ClassInfo {
        &self.classes[self.class_of[e]]
    }

    /// `|g|_c` when the class of `g` is confirmed.
    pub fn conj_length(&self, e: usize) -> Option<usize> {
        let c = self.class_of(e);
        c.confirmed.then_some(c.min_len)
    }

    /// Classes meeting lengths `<= max_len` whose minimum is not confirmed.
    pub fn unconfirmed_up_to(&self, max_len: usize) -> usize {
        self.classes.iter().filter(|c| !c.confirmed && c.min_len <= max_len).count()
    }

    /// `ConjSL` words of length `<= max_len`, in shortlex order.
    pub fn conj_sl_words(&self, max_len: usize) -> Vec<Word> {
        self.classes.iter().filter(|c| c.confirmed && c.min_len <= max_len).map(|c| c.rep.clone()).collect()
    }

    /// `ConjEq` words of length `<= max_len`, in shortlex order.
    pub fn conj_eq_words(&self, ball: &Ball, max_len: usize) -> Vec<Word> {
        (0..ball.len())
            .filter(|&e| ball.length(e) <= max_len && self.conj_length(e) == Some(ball.length(e)))
            .map(|e| ball.shortlex_word(e).to_vec())
            .collect()
    }
}

/// Histogram of word lengths `0..=n`.
pub fn strict_counts(words: &[Word], n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n + 1];
    for w in words {
        if w.len() <= n {
            out[w.len()] += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graphprod::builtin;
    use crate::rewriting::RewritingSystem;

    fn table(spec: &crate::graphprod::GraphProductSpec, r: usize) -> (RewritingSystem, Ball, ConjugacyTable) {
        let sys = RewritingSystem::build(spec, &Caps::default()).unwrap();
        let ball = Ball::build(&sys, r, &Caps::default()).unwrap();
        let t = ConjugacyTable::build(&sys, &ball, 2);
        (sys, ball, t)
    }

    #[test]
    fn infinite_dihedral() {
        let s = builtin::pair("Z2", "Z2", false);
        let (_, ball, t) = table(&s, 8);
        let words: Vec<String> = t.conj_sl_words(6).iter().map(|w| s.alphabet().render_word(w)).collect();
        assert_eq!(words, ["", "a_1", "a_2", "a_1 a_2", "a_1 a_2 a_1 a_2", "a_1 a_2 a_1 a_2 a_1 a_2"]);
        assert_eq!(ball.sphere_sizes(), vec![1, 2, 2, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn psl2_classes_of_length_two() {
        let (_, _, t) = table(&builtin::psl2(), 6);
        assert_eq!(strict_counts(&t.conj_sl_words(4), 4), vec![1, 3, 2, 0, 3]);
        assert_eq!(t.unconfirmed_up_to(4), 0);
        assert!(t.unconfirmed_up_to(6) > 0);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let s = builtin::pair("Z2", "Z3", true);
        let (_, ball, t) = table(&s, 4);
        assert!(t.classes().iter().all(|c| c.members == 1));
        assert_eq!(t.conj_eq_words(&ball, 4).len(), ball.len());
    }
}
