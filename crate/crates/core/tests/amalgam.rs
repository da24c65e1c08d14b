use ggrow_core::constructions::{conjgeo_series_amalgam, conjgeo_series_amalgam_closed};
use ggrow_core::groups::AmalgamSpec;
use ggrow_core::input::GroupSpec;
use ggrow_core::pipeline::{for_each_word, series, verify, Language, Options};

fn load(text: &str) -> AmalgamSpec {
    match GroupSpec::parse(text).unwrap() {
        GroupSpec::Amalgam(a) => a,
        GroupSpec::GraphProduct(_) => panic!("expected an amalgam"),
    }
}

fn z4() -> AmalgamSpec {
    load(include_str!("data/z4_amalg_z4_tables.json"))
}

fn s3_z6() -> AmalgamSpec {
    load(include_str!("data/s3_amalg_z6_tables.json"))
}

#[test]
fn closed_form_matches_automaton() {
    for (a, x, pq) in [(z4(), 5, 4), (s3_z6(), 8, 9)] {
        let (xk, xg, xh) = a.letter_counts();
        assert_eq!((xk + xg + xh, xg * xh), (x, pq));
        assert_eq!(conjgeo_series_amalgam(&a), conjgeo_series_amalgam_closed(&a));
    }
    assert_eq!(conjgeo_series_amalgam(&z4()).to_string(), "(1+5z+4z^2-20z^3)/(1-4z^2)");
}

#[test]
fn normal_form_is_multiplicative() {
    for a in [z4(), s3_z6()] {
        let k = a.alphabet().len();
        let mut short = Vec::new();
        for_each_word(k, 3, |w| short.push(w.to_vec()));
        for u in &short {
            let nu = a.form_word(&a.normal_form(u).unwrap());
            for v in &short {
                let mut uv = u.clone();
                uv.extend(v);
                let mut glued = nu.clone();
                glued.extend(a.form_word(&a.normal_form(v).unwrap()));
                assert_eq!(a.normal_form(&uv).unwrap(), a.normal_form(&glued).unwrap());
            }
        }
    }
}

#[test]
fn oracle_agrees_to_length_six() {
    for a in [z4(), s3_z6()] {
        let spec = GroupSpec::Amalgam(a);
        for lang in [Language::ConjGeo, Language::ConjEq] {
            let r = verify(&spec, lang, 6, &Options::default()).unwrap();
            assert!(r.passed(), "{}", r.to_json());
            assert!(r.confluent.is_none());
        }
    }
}

#[test]
fn geo_is_not_offered() {
    assert!(series(&GroupSpec::Amalgam(z4()), Language::Geo, 5, false, &Options::default()).is_err());
}
