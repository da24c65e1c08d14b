use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::fsa::Word;
use crate::par;

use super::system::{RewritingSystem, RuleKind};

/// Unresolved pairs kept in a report; the counts are always complete.
const KEEP_FAILURES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub word: Word,
    pub rules: (usize, usize),
    /// e.g. `22ext`, `12int`; digits are `1` for R0/R1 and `2` for R2.
    pub kind: String,
    pub left: Word,
    pub right: Word,
    pub left_nf: Word,
    pub right_nf: Word,
}

impl CriticalPair {
    pub fn resolved(&self) -> bool {
        self.left_nf == self.right_nf
    }
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub rules: usize,
    pub pairs: u64,
    pub unresolved_count: u64,
    /// kind tag -> (pairs, unresolved)
    pub by_kind: BTreeMap<String, (u64, u64)>,
    /// First unresolved pairs, sorted by overlap word.
    pub unresolved: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.unresolved_count == 0
    }

    pub fn render(&self, sys: &RewritingSystem) -> String {
        let t = sys.alphabet();
        let mut s = format!(
            "rules: {}\ncritical pairs: {}\nunresolved: {}\n",
            self.rules, self.pairs, self.unresolved_count
        );
        for (k, (n, bad)) in &self.by_kind {
            s += &format!("  {k}: {n} pairs, {bad} unresolved\n");
        }
        for p in &self.unresolved {
            s += &format!(
                "unresolved {} [{}] rules {},{}: {} ->* {} but {} ->* {}\n",
                t.render(&p.word),
                p.kind,
                p.rules.0,
                p.rules.1,
                t.render(&p.left),
                t.render(&p.left_nf),
                t.render(&p.right),
                t.render(&p.right_nf)
            );
        }
        s += if self.is_confluent() { "confluent\n" } else { "NOT confluent\n" };
        s
    }

    pub fn to_json(&self, sys: &RewritingSystem) -> Value {
        let t = sys.alphabet();
        json!({
            "rules": self.rules,
            "criticalPairs": self.pairs,
            "unresolvedCount": self.unresolved_count,
            "confluent": self.is_confluent(),
            "byKind": self.by_kind.iter().map(|(k, (n, b))| (k.clone(), json!({"pairs": n, "unresolved": b}))).collect::<serde_json::Map<_, _>>(),
            "unresolved": self.unresolved.iter().map(|p| json!({
                "overlap": t.render(&p.word),
                "kind": p.kind,
                "rules": [p.rules.0, p.rules.1],
                "left": t.render(&p.left),
                "right": t.render(&p.right),
                "leftNormalForm": t.render(&p.left_nf),
                "rightNormalForm": t.render(&p.right_nf),
            })).collect::<Vec<_>>(),
        })
    }
}

fn digit(k: RuleKind) -> usize {
    match k {
        RuleKind::R0 | RuleKind::R1 => 0,
        RuleKind::R2 => 1,
    }
}

fn slot_name(slot: usize) -> String {
    let d = |b: usize| if b == 0 { '1' } else { '2' };
    format!("{}{}{}", d(slot >> 2 & 1), d(slot >> 1 & 1), if slot & 1 == 1 { "int" } else { "ext" })
}

/// Generate every external and internal overlap of `sys` and try to join it.
pub fn check_confluence(sys: &RewritingSystem) -> ConfluenceReport {
    let srs = sys.srs();
    let rules = sys.rules();
    let parts = par::map_range(srs.len(), |r| {
        // index: first digit, second digit, internal
        let mut counts = [[0u64; 2]; 8];
        let mut bad = Vec::new();
        let (mut left, mut right) = (Vec::new(), Vec::new());
        srs.overlap_sites(r, |o| {
            let slot = 4 * digit(rules[o.first].kind) + 2 * digit(rules[o.second].kind) + o.internal as usize;
            srs.reducts_into(&o, &mut left, &mut right);
            srs.normalize(&mut left);
            srs.normalize(&mut right);
            counts[slot][0] += 1;
            if left != right {
                counts[slot][1] += 1;
                if bad.len() < KEEP_FAILURES {
                    let m = srs.materialize(&o);
                    bad.push(CriticalPair {
                        word: m.word,
                        rules: (o.first, o.second),
                        kind: slot_name(slot),
                        left: m.left,
                        right: m.right,
                        left_nf: left.clone(),
                        right_nf: right.clone(),
                    });
                }
            }
        });
        (counts, bad)
    });
    let mut report = ConfluenceReport { rules: srs.len(), ..Default::default() };
    for (counts, bad) in parts {
        for (slot, [n, b]) in counts.into_iter().enumerate() {
            if n == 0 {
                continue;
            }
            let e = report.by_kind.entry(slot_name(slot)).or_default();
            e.0 += n;
            e.1 += b;
            report.pairs += n;
            report.unresolved_count += b;
        }
        report.unresolved.extend(bad);
    }
    report.unresolved.sort_by(|a, b| a.word.cmp(&b.word).then(a.rules.cmp(&b.rules)));
    report.unresolved.truncate(KEEP_FAILURES);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graphprod::builtin;

    #[test]
    fn racg_is_confluent() {
        let sys = RewritingSystem::build(&builtin::racg(), &Caps::default()).unwrap();
        let rep = check_confluence(&sys);
        assert!(rep.is_confluent(), "{}", rep.render(&sys));
        assert!(rep.pairs > 0);
    }

    #[test]
    fn dropping_any_r2_rule_breaks_racg() {
        let sys = RewritingSystem::build(&builtin::racg(), &Caps::default()).unwrap();
        for (i, r) in sys.rules().iter().enumerate() {
            if r.kind == RuleKind::R2 {
                let rep = check_confluence(&sys.without_rule(i).unwrap());
                assert!(!rep.is_confluent(), "rule {i}");
            }
        }
    }
}
