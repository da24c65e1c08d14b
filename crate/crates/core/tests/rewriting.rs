use std::collections::BTreeSet;

use ggrow_core::caps::Caps;
use ggrow_core::graphprod::{builtin, GraphProductSpec};
use ggrow_core::groups::VertexGroup;
use ggrow_core::pipeline::for_each_word;
use ggrow_core::rewriting::{check_confluence, RewritingSystem, TAlphabet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn racg_system() -> RewritingSystem {
    RewritingSystem::build(&builtin::racg(), &Caps::default()).unwrap()
}

#[test]
fn racg_rules_match_golden() {
    let sys = racg_system();
    let golden: BTreeSet<String> = include_str!("data/racg_rules.golden").lines().map(String::from).collect();
    let ours: BTreeSet<String> = sys.rules().iter().map(|r| sys.render_rule(r)).collect();
    assert_eq!(golden.len(), 21);
    assert_eq!(ours, golden);
    assert!(check_confluence(&sys).is_confluent());
}

#[test]
fn single_involution_has_one_overlap() {
    let sys = RewritingSystem::build(&builtin::single_finite("Z2"), &Caps::default()).unwrap();
    assert_eq!(sys.rules().len(), 1);
    let rep = check_confluence(&sys);
    assert_eq!(rep.pairs, 1);
    assert!(rep.is_confluent());
}

#[test]
fn theta_example() {
    let spec = builtin::racg();
    let sys = racg_system();
    let w = spec.parse_word("a2 a1 a2").unwrap();
    assert_eq!(spec.alphabet().render_word(&sys.theta(&w)), "a1");
}

#[test]
fn z_free_z_cross_z_has_ten_t_letters() {
    let z = |x: &str| VertexGroup::infinite_cyclic(Some([x.to_string(), format!("{x}^-1")])).unwrap();
    let spec = GraphProductSpec::new(vec![z("a"), z("b"), z("c")], &[(1, 2)], None).unwrap();
    let t = TAlphabet::build(&spec, &Caps::default()).unwrap();
    assert_eq!(t.len(), 10);
    assert_eq!((0..t.len()).filter(|&i| t.weight(i) == 2).count(), 4);
}

#[test]
fn t_alphabet_cap_is_enforced() {
    let caps = Caps { t_alphabet: 4, ..Caps::default() };
    assert!(TAlphabet::build(&builtin::racg(), &caps).is_err());
}

fn random_normal_form(sys: &RewritingSystem, w: &[usize], rng: &mut StdRng) -> Vec<usize> {
    let srs = sys.srs();
    let mut w = w.to_vec();
    loop {
        let rs = srs.redexes(&w);
        if rs.is_empty() {
            return w;
        }
        let (p, r) = rs[rng.random_range(0..rs.len())];
        w = srs.apply_at(&w, p, r);
    }
}

/// Normal forms do not depend on which redex is rewritten.
#[test]
fn strategy_independence() {
    let mut rng = StdRng::seed_from_u64(7);
    for spec in [builtin::racg(), builtin::psl2(), builtin::pair("Z3", "V4", false), builtin::pair("Z4", "Z2", true)] {
        let sys = RewritingSystem::build(&spec, &Caps::default()).unwrap();
        let k = sys.alphabet().len();
        for _ in 0..500 {
            let n = rng.random_range(0..12);
            let w: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
            let nf = sys.srs().normal_form(&w);
            assert_eq!(random_normal_form(&sys, &w, &mut rng), nf, "{w:?}");
        }
    }
}

#[test]
fn irr_is_a_canonical_form_for_short_words() {
    let spec = builtin::psl2();
    let sys = RewritingSystem::build(&spec, &Caps::default()).unwrap();
    // b c and c b both equal 1, so irr agrees on w and w b c
    for_each_word(spec.alphabet().len(), 5, |w| {
        let mut longer = w.to_vec();
        longer.extend([1, 2]);
        assert_eq!(sys.irr_of_x(w), sys.irr_of_x(&longer));
    });
}

#[test]
fn every_dropped_rule_is_detected() {
    let sys = racg_system();
    for r in 0..sys.rules().len() {
        let cut = sys.without_rule(r).unwrap();
        let rep = check_confluence(&cut);
        let kind = sys.rules()[r].kind;
        // an R0 rule may be a consequence of others; R2 rules never are
        if kind.to_string() == "R2" {
            assert!(!rep.is_confluent(), "rule {r} removed");
        }
    }
    assert!(sys.without_rule(99).is_err());
}
