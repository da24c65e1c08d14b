use std::collections::{HashSet, VecDeque};

use crate::caps::Caps;
use crate::fsa::Word;
use crate::groups::{VertexGroup, VertexKind};

use super::srs::{shortlex, Srs};
use super::RewriteError;

/// Complete shortlex rewriting system `S_i` for a vertex group over its
/// local letters.
///
/// Finite groups: every minimal word not in shortlex normal form rewrites
/// to its normal form. `Z` and free groups: free reduction. The result is
/// checked with Knuth-Bendix and completed if a pair fails to join.
pub fn vertex_system(g: &VertexGroup, caps: &Caps) -> Result<Vec<(Word, Word)>, RewriteError> {
    let k = g.num_letters();
    let mut rules: Vec<(Word, Word)> = Vec::new();
    match g.kind() {
        VertexKind::Finite(_) => {
            let is_nf = |w: &[usize]| g.normal_form(w) == w;
            let mut seen: HashSet<Word> = HashSet::new();
            let mut queue: VecDeque<Word> = VecDeque::from([Vec::new()]);
            seen.insert(Vec::new());
            while let Some(w) = queue.pop_front() {
                for a in 0..k {
                    let mut u = w.clone();
                    u.push(a);
                    if is_nf(&u) {
                        if seen.insert(u.clone()) {
                            queue.push_back(u);
                        }
                    } else if is_nf(&u[1..]) {
                        let v = g.normal_form(&u);
                        rules.push((u, v));
                    }
                }
            }
        }
        VertexKind::InfiniteCyclic | VertexKind::Free { .. } => {
            for a in 0..k {
                rules.push((vec![a, g.inverse(a)], Vec::new()));
            }
        }
    }
    rules.sort_by(|x, y| shortlex(&x.0, &y.0));
    let rules = complete(rules, caps.kb_iterations)?;
    if let Some((l, _)) = rules.iter().find(|(l, _)| l.len() > caps.vertex_lhs) {
        return Err(RewriteError::VertexLhs { len: l.len(), limit: caps.vertex_lhs });
    }
    Ok(rules)
}

/// Knuth-Bendix for shortlex-decreasing rules, bounded by `rounds`.
fn complete(mut rules: Vec<(Word, Word)>, rounds: usize) -> Result<Vec<(Word, Word)>, RewriteError> {
    for _ in 0..=rounds {
        let (srs, _) = Srs::new(rules.clone());
        let mut new: Vec<(Word, Word)> = Vec::new();
        for r in 0..srs.len() {
            srs.overlaps_of(r, |o| {
                let x = srs.normal_form(&o.left);
                let y = srs.normal_form(&o.right);
                if x != y {
                    let (big, small) = if shortlex(&x, &y).is_gt() { (x, y) } else { (y, x) };
                    new.push((big, small));
                }
            });
        }
        if new.is_empty() {
            // inter-reduce: drop rules whose left side has a reducible proper factor
            let keep: Vec<(Word, Word)> = rules
                .iter()
                .filter(|(l, _)| {
                    let (others, _) = Srs::new(rules.iter().filter(|(m, _)| m != l).cloned().collect());
                    others.is_irreducible(l)
                })
                .map(|(l, r)| (l.clone(), srs.normal_form(r)))
                .collect();
            return Ok(keep);
        }
        rules.extend(new);
        rules.sort_by(|x, y| shortlex(&x.0, &y.0));
        rules.dedup_by(|a, b| a.0 == b.0);
    }
    Err(RewriteError::Completion(rounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::groups::FiniteGroupTable;

    fn finite(name: &str) -> VertexGroup {
        VertexGroup::finite_full(Arc::new(FiniteGroupTable::builtin(name).unwrap()))
    }

    #[test]
    fn small_systems() {
        let caps = Caps::default();
        assert_eq!(vertex_system(&finite("Z2"), &caps).unwrap(), vec![(vec![0, 0], vec![])]);
        // Z3 over a < a2
        let z3 = vertex_system(&finite("Z3"), &caps).unwrap();
        assert_eq!(z3, vec![(vec![0, 0], vec![1]), (vec![0, 1], vec![]), (vec![1, 0], vec![]), (vec![1, 1], vec![0])]);
        let z = VertexGroup::infinite_cyclic(None).unwrap();
        assert_eq!(vertex_system(&z, &caps).unwrap(), vec![(vec![0, 1], vec![]), (vec![1, 0], vec![])]);
    }

    #[test]
    fn normal_forms_agree_with_vertex_group() {
        let caps = Caps::default();
        let t = Arc::new(FiniteGroupTable::builtin("S3").unwrap());
        let g = VertexGroup::finite(t, &[1, 2, 4, 5], None).unwrap();
        let (srs, _) = Srs::new(vertex_system(&g, &caps).unwrap());
        let mut w = Vec::new();
        for i in 0..200usize {
            w.push((i * 7 + i / 3) % 4);
            assert_eq!(srs.normal_form(&w), g.normal_form(&w));
        }
    }

    #[test]
    fn completion_adds_missing_rule() {
        // Z3 without the rule a2 a2 -> a
        let rules = vec![(vec![0, 0], vec![1]), (vec![0, 1], vec![]), (vec![1, 0], vec![])];
        let done = complete(rules, 5).unwrap();
        assert!(done.contains(&(vec![1, 1], vec![0])));
    }
}
