//! Language selection, series and verification for a loaded spec.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::caps::Caps;
use crate::constructions::{self, ConstructionError, FreeProductFiniteInput};
use crate::fsa::{strict_growth_series, Dfa, Word};
use crate::graphprod::{conj_geodesic_language, geodesic_language, GraphProdError, GraphProductSpec};
use crate::input::GroupSpec;
use crate::oracle::{strict_counts, Ball, ConjugacyTable, GroupArith, OracleError, TrimOracle};
use crate::rewriting::{check_confluence, RewriteError, RewritingSystem};
use crate::series::{reconstruct_rational, RationalFunction, SeriesError, SeriesExpansion};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Language {
    Geo,
    ConjGeo,
    SphConj,
    ConjEq,
}

impl Language {
    pub fn name(self) -> &'static str {
        match self {
            Language::Geo => "geo",
            Language::ConjGeo => "conjgeo",
            Language::SphConj => "sphconj",
            Language::ConjEq => "conjeq",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "geo" => Ok(Language::Geo),
            "conjgeo" => Ok(Language::ConjGeo),
            "sphconj" => Ok(Language::SphConj),
            "conjeq" => Ok(Language::ConjEq),
            _ => Err(format!("unknown language {s:?} (geo, conjgeo, sphconj, conjeq)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    GraphProduct(#[from] GraphProdError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl From<ConstructionError> for PipelineError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Series(s) => PipelineError::Series(s),
            other => PipelineError::Unsupported(other.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub caps: Caps,
    pub slack: usize,
    /// Drop this rule of the rewriting system (fault injection).
    pub drop_rule: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Self { caps: Caps::default(), slack: 2, drop_rule: None }
    }
}

/// Minimal DFA of the language, where one is constructed.
pub fn automaton(spec: &GroupSpec, lang: Language) -> Result<Dfa, PipelineError> {
    match (spec, lang) {
        (GroupSpec::GraphProduct(s), Language::Geo) => Ok(geodesic_language(s)?),
        (GroupSpec::GraphProduct(s), Language::ConjGeo) => Ok(conj_geodesic_language(s)?),
        (GroupSpec::GraphProduct(s), Language::SphConj) => Ok(constructions::sphconj_language(s)?),
        (GroupSpec::Amalgam(a), Language::ConjGeo) => Ok(a.conj_geodesic_dfa()),
        (_, Language::ConjEq) => Err(PipelineError::Unsupported("no automaton is built for conjeq; use series or verify".into())),
        (GroupSpec::Amalgam(_), l) => Err(PipelineError::Unsupported(format!("{l} for amalgams (conjgeo and conjeq are available)"))),
    }
}

/// How a series was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMethod {
    Automaton,
    Burnside,
    Oracle,
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub language: Language,
    pub method: SeriesMethod,
    pub rational: Option<RationalFunction>,
    pub expansion: SeriesExpansion,
    /// Present when reconstruction was requested; `None` inside when no
    /// rational function was found.
    pub reconstructed: Option<Option<RationalFunction>>,
    pub unconfirmed_classes: usize,
}

impl SeriesReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "language": self.language.name(),
            "method": format!("{:?}", self.method).to_lowercase(),
            "rational": self.rational.as_ref().map(|r| r.to_string()),
            "coefficients": self.expansion.to_json(),
            "unconfirmedClasses": self.unconfirmed_classes,
        });
        if let Some(r) = &self.reconstructed {
            v["reconstructed"] = json!(r.as_ref().map(|r| r.to_string()));
        }
        v
    }
}

fn oracle_arith<'a>(spec: &'a GroupSpec, opts: &Options) -> Result<Box<dyn GroupArith + 'a>, PipelineError> {
    match spec {
        GroupSpec::GraphProduct(s) => {
            let sys = RewritingSystem::build(s, &opts.caps)?;
            Ok(Box::new(match opts.drop_rule {
                Some(r) => sys.without_rule(r)?,
                None => sys,
            }))
        }
        GroupSpec::Amalgam(a) => Ok(Box::new(a.clone())),
    }
}

fn free_product_input(s: &GraphProductSpec) -> Option<FreeProductFiniteInput> {
    if s.num_vertices() == 2 && s.is_edgeless() {
        FreeProductFiniteInput::from_vertices(s.vertex(0), s.vertex(1)).ok()
    } else {
        None
    }
}

pub fn series(spec: &GroupSpec, lang: Language, order: usize, reconstruct: bool, opts: &Options) -> Result<SeriesReport, PipelineError> {
    let mut unconfirmed = 0;
    let (method, rational, expansion) = match automaton(spec, lang) {
        Ok(d) => {
            let r = strict_growth_series(&d);
            let e = r.expand(order)?;
            (SeriesMethod::Automaton, Some(r), e)
        }
        Err(PipelineError::Unsupported(why)) => {
            let fp = match spec {
                GroupSpec::GraphProduct(s) if lang == Language::SphConj => free_product_input(s),
                _ => None,
            };
            if let Some(inp) = fp {
                (SeriesMethod::Burnside, None, constructions::sphconj_series_free_product_finite(&inp, order))
            } else if matches!(lang, Language::SphConj | Language::ConjEq) {
                let g = oracle_arith(spec, opts)?;
                let ball = Ball::build(g.as_ref(), order + opts.slack, &opts.caps)?;
                let table = ConjugacyTable::build(g.as_ref(), &ball, opts.slack);
                unconfirmed = table.unconfirmed_up_to(order);
                let words = if lang == Language::SphConj { table.conj_sl_words(order) } else { table.conj_eq_words(&ball, order) };
                (SeriesMethod::Oracle, None, SeriesExpansion::from_u64s(&strict_counts(&words, order)))
            } else {
                return Err(PipelineError::Unsupported(why));
            }
        }
        Err(e) => return Err(e),
    };
    let reconstructed = reconstruct.then(|| reconstruct_rational(&expansion, (order / 2).saturating_sub(1)));
    Ok(SeriesReport { language: lang, method, rational, expansion, reconstructed, unconfirmed_classes: unconfirmed })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub word: Word,
    pub automaton: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub language: Language,
    pub max_len: usize,
    pub words_checked: u64,
    pub mismatches: Vec<Mismatch>,
    pub unconfirmed_classes: usize,
    /// Critical-pair check of the rewriting system behind the oracle.
    pub confluent: Option<bool>,
    rendered: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.unconfirmed_classes == 0 && self.confluent != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "language": self.language.name(),
            "maxLen": self.max_len,
            "wordsChecked": self.words_checked,
            "mismatches": self.mismatches.iter().zip(&self.rendered).map(|(m, w)| json!({
                "word": w,
                "automaton": m.automaton,
                "oracle": m.oracle,
            })).collect::<Vec<_>>(),
            "unconfirmedClasses": self.unconfirmed_classes,
            "confluent": self.confluent,
            "passed": self.passed(),
        })
    }
}

/// Calls `f` on every word of length `<= max_len` in shortlex order.
pub fn for_each_word(k: usize, max_len: usize, mut f: impl FnMut(&[usize])) {
    let mut w: Word = Vec::new();
    f(&w);
    if k == 0 {
        return;
    }
    for n in 1..=max_len {
        w.clear();
        w.resize(n, 0);
        loop {
            f(&w);
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                w[i] += 1;
                if w[i] < k {
                    break;
                }
                w[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
}

/// Compare automaton membership with the oracle on every word of length
/// `<= max_len`.
pub fn verify(spec: &GroupSpec, lang: Language, max_len: usize, opts: &Options) -> Result<VerifyReport, PipelineError> {
    let g = oracle_arith(spec, opts)?;
    let confluent = match (spec, opts.drop_rule) {
        (GroupSpec::GraphProduct(s), drop) => {
            let sys = RewritingSystem::build(s, &opts.caps)?;
            let sys = match drop {
                Some(r) => sys.without_rule(r)?,
                None => sys,
            };
            Some(check_confluence(&sys).is_confluent())
        }
        _ => None,
    };
    let ball = Ball::build(g.as_ref(), max_len + opts.slack, &opts.caps)?;
    let table = ConjugacyTable::build(g.as_ref(), &ball, opts.slack);
    let unconfirmed = table.unconfirmed_up_to(max_len);
    let k = spec.alphabet().len();
    let mut mismatches = Vec::new();
    let mut checked = 0u64;
    let elem = |w: &[usize]| ball.find(&g.key(w)).expect("element within the ball");
    match lang {
        Language::Geo | Language::ConjGeo => {
            let d = automaton(spec, lang)?;
            let mut trim = match spec {
                GroupSpec::GraphProduct(s) => Some(TrimOracle::new(s, lang == Language::ConjGeo, &opts.caps)?),
                GroupSpec::Amalgam(_) => None,
            };
            let mut err = None;
            for_each_word(k, max_len, |w| {
                checked += 1;
                let e = elem(w);
                let by_ball = match lang {
                    Language::Geo => ball.length(e) == w.len(),
                    _ => table.conj_length(e).map_or(true, |c| c == w.len()),
                };
                let by_ops = match trim.as_mut().map(|t| t.test(w)) {
                    Some(Ok(b)) => b,
                    Some(Err(x)) => {
                        err.get_or_insert(x);
                        by_ball
                    }
                    None => by_ball,
                };
                let a = d.accepts(w).expect("alphabet letters");
                if a != by_ball || a != by_ops {
                    mismatches.push(Mismatch { word: w.to_vec(), automaton: a, oracle: if a != by_ball { by_ball } else { by_ops } });
                }
            });
            if let Some(x) = err {
                return Err(x.into());
            }
        }
        Language::SphConj => {
            let d = automaton(spec, lang)?;
            let sl: std::collections::HashSet<Word> = table.conj_sl_words(max_len).into_iter().collect();
            for_each_word(k, max_len, |w| {
                checked += 1;
                let (a, o) = (d.accepts(w).expect("alphabet letters"), sl.contains(w));
                if a != o {
                    mismatches.push(Mismatch { word: w.to_vec(), automaton: a, oracle: o });
                }
            });
        }
        Language::ConjEq => {
            // ConjSL ⊆ ConjEq ⊆ ConjGeo, with the ConjGeo automaton as the
            // outer bound
            let d = automaton(spec, Language::ConjGeo)?;
            let eq = table.conj_eq_words(&ball, max_len);
            let eq_set: std::collections::HashSet<&Word> = eq.iter().collect();
            for w in &eq {
                checked += 1;
                if !d.accepts(w).expect("alphabet letters") {
                    mismatches.push(Mismatch { word: w.clone(), automaton: false, oracle: true });
                }
            }
            for w in table.conj_sl_words(max_len) {
                if !eq_set.contains(&w) {
                    mismatches.push(Mismatch { word: w, automaton: false, oracle: true });
                }
            }
        }
    }
    let alpha = spec.alphabet();
    let rendered = mismatches
        .iter()
        .map(|m| if m.word.is_empty() { "1".to_string() } else { alpha.render_word(&m.word) })
        .collect();
    Ok(VerifyReport {
        language: lang,
        max_len,
        words_checked: checked,
        mismatches,
        unconfirmed_classes: unconfirmed,
        confluent,
        rendered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphprod::builtin;

    #[test]
    fn word_enumeration() {
        let mut all = Vec::new();
        for_each_word(2, 2, |w| all.push(w.to_vec()));
        assert_eq!(all, vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut n = 0;
        for_each_word(0, 3, |_| n += 1);
        assert_eq!(n, 1);
    }

    #[test]
    fn racg_verifies() {
        let spec = GroupSpec::GraphProduct(builtin::racg());
        for lang in [Language::Geo, Language::ConjGeo, Language::ConjEq] {
            let r = verify(&spec, lang, 6, &Options::default()).unwrap();
            assert!(r.passed(), "{lang}: {}", r.to_json());
        }
    }

    #[test]
    fn dropped_rule_fails() {
        let spec = GroupSpec::GraphProduct(builtin::racg());
        let opts = Options { drop_rule: Some(15), ..Options::default() };
        assert!(!verify(&spec, Language::Geo, 5, &opts).unwrap().passed());
    }

    #[test]
    fn sphconj_series_methods() {
        let psl2 = GroupSpec::GraphProduct(builtin::psl2());
        let r = series(&psl2, Language::SphConj, 6, false, &Options::default()).unwrap();
        assert_eq!(r.method, SeriesMethod::Burnside);
        let o = series(&GroupSpec::GraphProduct(builtin::f2()), Language::SphConj, 4, false, &Options::default()).unwrap();
        assert_eq!(o.method, SeriesMethod::Oracle);
        assert_eq!(o.unconfirmed_classes, 0);
    }
}
