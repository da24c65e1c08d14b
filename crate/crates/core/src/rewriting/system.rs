use std::cmp::Ordering;
use std::fmt;

use crate::caps::Caps;
use crate::fsa::Word;
use crate::graphprod::GraphProductSpec;
use crate::par;

use super::srs::Srs;
use super::talphabet::TAlphabet;
use super::vertex_sys::vertex_system;
use super::RewriteError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    /// Vertex rule that shortens.
    R0,
    /// Vertex rule of equal length.
    R1,
    /// Moves a letter leftwards into a clique letter.
    R2,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleKind::R0 => "R0",
            RuleKind::R1 => "R1",
            RuleKind::R2 => "R2",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Word,
    pub kind: RuleKind,
}

/// The rewriting system `(T, R)` of a graph product.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    spec: GraphProductSpec,
    talpha: TAlphabet,
    vertex_systems: Vec<Vec<(Word, Word)>>,
    rules: Vec<RewriteRule>,
    srs: Srs,
}

impl RewritingSystem {
    pub fn build(spec: &GraphProductSpec, caps: &Caps) -> Result<Self, RewriteError> {
        let talpha = TAlphabet::build(spec, caps)?;
        let vertex_systems = par::map_range(spec.num_vertices(), |i| vertex_system(spec.vertex(i), caps))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        let mut total: u128 = 0;
        for (i, sys) in vertex_systems.iter().enumerate() {
            for (l, _) in sys {
                total += l
                    .iter()
                    .map(|&j| talpha.joins(spec.global_id(i, j)).len() as u128)
                    .product::<u128>();
            }
        }
        total += (0..spec.alphabet().len()).map(|a| r2_count(&talpha, a)).sum::<u128>();
        if total > caps.rules as u128 {
            return Err(RewriteError::TooManyRules(caps.rules));
        }
        let mut raw: Vec<RewriteRule> = Vec::with_capacity(total as usize);
        for (i, sys) in vertex_systems.iter().enumerate() {
            for (u, v) in sys {
                let a: Vec<usize> = u.iter().map(|&j| spec.global_id(i, j)).collect();
                let b: Vec<usize> = v.iter().map(|&j| spec.global_id(i, j)).collect();
                let kind = if b.len() < a.len() { RuleKind::R0 } else { RuleKind::R1 };
                let choices: Vec<&[(Option<usize>, usize)]> = a.iter().map(|&x| talpha.joins(x)).collect();
                for_each_choice(&choices.iter().map(|c| c.len()).collect::<Vec<_>>(), |pick| {
                    let lhs: Word = (0..a.len()).map(|j| choices[j][pick[j]].1).collect();
                    let mut rhs: Word = Vec::with_capacity(a.len());
                    for j in 0..a.len() {
                        let t = choices[j][pick[j]].0;
                        if j < b.len() {
                            rhs.push(talpha.join(b[j], t).expect("same clique"));
                        } else if let Some(t) = t {
                            rhs.push(t);
                        }
                    }
                    raw.push(RewriteRule { lhs, rhs, kind });
                });
            }
        }
        // t {a,t'} -> {a,t} t'
        for t in 0..talpha.len() {
            for a in 0..spec.alphabet().len() {
                if talpha.letter(t).members.iter().any(|&b| spec.vertex_of(b) == spec.vertex_of(a)) {
                    continue;
                }
                let Some(at) = talpha.join(a, Some(t)) else { continue };
                for &(t2, at2) in talpha.joins(a) {
                    let mut rhs = vec![at];
                    rhs.extend(t2);
                    raw.push(RewriteRule { lhs: vec![t, at2], rhs, kind: RuleKind::R2 });
                }
            }
        }
        for r in &raw {
            if weightlex_compare(&talpha, &r.lhs, &r.rhs) != Ordering::Greater {
                return Err(RewriteError::NotDecreasing(format!(
                    "{} -> {}",
                    talpha.render(&r.lhs),
                    talpha.render(&r.rhs)
                )));
            }
        }
        Ok(Self::from_rules(spec.clone(), talpha, vertex_systems, raw))
    }

    fn from_rules(
        spec: GraphProductSpec,
        talpha: TAlphabet,
        vertex_systems: Vec<Vec<(Word, Word)>>,
        raw: Vec<RewriteRule>,
    ) -> Self {
        let (srs, kept) = Srs::new(raw.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect());
        let rules = kept.into_iter().map(|i| raw[i].clone()).collect();
        Self { spec, talpha, vertex_systems, rules, srs }
    }

    /// Same system with rule `r` removed, for exercising the checker.
    pub fn without_rule(&self, r: usize) -> Result<Self, RewriteError> {
        if r >= self.rules.len() {
            return Err(RewriteError::NoSuchRule(r, self.rules.len()));
        }
        let mut raw = self.rules.clone();
        raw.remove(r);
        Ok(Self::from_rules(self.spec.clone(), self.talpha.clone(), self.vertex_systems.clone(), raw))
    }

    pub fn spec(&self) -> &GraphProductSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> &TAlphabet {
        &self.talpha
    }

    pub fn vertex_systems(&self) -> &[Vec<(Word, Word)>] {
        &self.vertex_systems
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn srs(&self) -> &Srs {
        &self.srs
    }

    /// `irr(w)` by leftmost, lowest-index rewriting.
    pub fn irr(&self, w: &[usize]) -> Word {
        self.srs.normal_form(w)
    }

    pub fn h(&self, w: &[usize]) -> Word {
        self.talpha.h(w)
    }

    /// `h(irr(w))` for a word over `X`.
    pub fn theta(&self, w: &[usize]) -> Word {
        self.h(&self.irr(&self.talpha.embed(w)))
    }

    /// Irreducible `T`-word of a word over `X`.
    pub fn irr_of_x(&self, w: &[usize]) -> Word {
        self.irr(&self.talpha.embed(w))
    }

    pub fn render_rule(&self, r: &RewriteRule) -> String {
        format!("{} -> {}  [{}]", self.talpha.render(&r.lhs), self.talpha.render(&r.rhs), r.kind)
    }

    /// One rule per line.
    pub fn dump(&self) -> String {
        self.rules.iter().map(|r| self.render_rule(r) + "\n").collect()
    }
}

/// Calls `f` on every index tuple below `sizes`, last index fastest.
fn for_each_choice(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut pick = vec![0usize; sizes.len()];
    loop {
        f(&pick);
        let mut j = sizes.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            pick[j] += 1;
            if pick[j] < sizes[j] {
                break;
            }
            pick[j] = 0;
        }
    }
}

fn r2_count(talpha: &TAlphabet, a: usize) -> u128 {
    // one R2 rule per `t` with `{a,t}` in T and per decoration of `a`
    let with_t = talpha.joins(a).iter().filter(|(t, _)| t.is_some()).count() as u128;
    with_t * talpha.joins(a).len() as u128
}

/// Total weight, then lexicographic in `T` order.
pub fn weightlex_compare(talpha: &TAlphabet, u: &[usize], v: &[usize]) -> Ordering {
    talpha.total_weight(u).cmp(&talpha.total_weight(v)).then_with(|| u.cmp(v))
}
