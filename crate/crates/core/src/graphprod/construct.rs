use std::sync::Arc;

use crate::fsa::{Alphabet, Dfa, Fsa};
use crate::par;

use super::spec::GraphProductSpec;
use super::GraphProdError;

/// Read a DFA over `X_i` as one over `X_i ∪ {$}`, with `$` leading to a
/// fresh dead state.
pub fn lift_to_codomain(d: &Dfa, codomain: Arc<Alphabet>) -> Dfa {
    let k = d.alphabet().len();
    assert_eq!(codomain.len(), k + 1, "codomain is the local alphabet plus $");
    let dead = d.num_states();
    Dfa::from_fn(codomain, dead + 1, d.start(), |q| q < dead && d.is_accepting(q), |q, a| {
        if q == dead || a == k {
            dead
        } else {
            d.step(q, a)
        }
    })
}

/// `Geo_i ($ Geo_i)*` over `X_i ∪ {$}`.
pub fn geo_split_pattern(geo: &Dfa, codomain: Arc<Alphabet>) -> Result<Dfa, GraphProdError> {
    if !geo.is_accepting(geo.start()) {
        return Err(GraphProdError::EmptyWordRejected);
    }
    let k = geo.alphabet().len();
    let dead = geo.num_states();
    // `$` restarts the vertex automaton after an accepted segment
    Ok(Dfa::from_fn(codomain, dead + 1, geo.start(), |q| q < dead && geo.is_accepting(q), |q, a| {
        if q == dead {
            dead
        } else if a == k {
            if geo.is_accepting(q) {
                geo.start()
            } else {
                dead
            }
        } else {
            geo.step(q, a)
        }
    })
    .minimize())
}

/// `U~_i = ∪_j Lbar_j $ (Geo_i $)* L_j` built from the per-state
/// decomposition of the vertex Geo automaton.
pub fn u_tilde(geo: &Dfa, codomain: Arc<Alphabet>) -> Dfa {
    let k = geo.alphabet().len();
    let lifted = lift_to_codomain(geo, codomain.clone());
    let dollar = Dfa::from_words(codomain.clone(), &[vec![k]]).expect("sentinel word").to_fsa();
    let geo_fsa = lifted.to_fsa();
    let middle = geo_fsa.concatenation(&dollar).expect("shared alphabet").star();
    let live = lifted.live_states();
    let mut acc: Option<Fsa> = None;
    for (j, (l, lbar)) in lifted.per_state_decomposition().into_iter().enumerate() {
        if !live[j] {
            continue;
        }
        let piece = lbar
            .to_fsa()
            .concatenation(&dollar)
            .and_then(|f| f.concatenation(&middle))
            .and_then(|f| f.concatenation(&l.to_fsa()))
            .expect("shared alphabet");
        acc = Some(match acc {
            None => piece,
            Some(a) => a.union(&piece).expect("shared alphabet"),
        });
    }
    match acc {
        Some(f) => f.determinize().minimize(),
        None => Dfa::empty_language(codomain),
    }
}

fn intersect_all(parts: Vec<Dfa>, alphabet: &Arc<Alphabet>) -> Dfa {
    parts
        .into_iter()
        .fold(Dfa::universal(alphabet.clone()), |acc, d| acc.intersection(&d).expect("same alphabet").minimize())
}

/// `Geo = ∩_i pi_i^{-1}(Geo_i ($ Geo_i)*)`.
pub fn geodesic_language(spec: &GraphProductSpec) -> Result<Dfa, GraphProdError> {
    let parts = par::map_range(spec.num_vertices(), |i| {
        let g = spec.vertex(i);
        let geo = g.geodesic_dfa(spec.local_alphabet(i));
        let split = geo_split_pattern(&geo, spec.codomain_alphabet(i))?;
        Ok(split
            .inverse_homomorphism(spec.alphabet().clone(), &spec.pi_words(i))
            .expect("images over the codomain")
            .minimize())
    });
    let parts = parts.into_iter().collect::<Result<Vec<_>, GraphProdError>>()?;
    Ok(intersect_all(parts, spec.alphabet()))
}

/// `ConjGeo = ∩_i pi_i^{-1}(ConjGeo_i ∪ U~_i)`.
pub fn conj_geodesic_language(spec: &GraphProductSpec) -> Result<Dfa, GraphProdError> {
    let parts = par::map_range(spec.num_vertices(), |i| {
        let g = spec.vertex(i);
        let local = spec.local_alphabet(i);
        let cod = spec.codomain_alphabet(i);
        let geo = g.geodesic_dfa(local.clone());
        if !geo.is_accepting(geo.start()) {
            return Err(GraphProdError::EmptyWordRejected);
        }
        let cg = lift_to_codomain(&g.conj_geodesic_dfa(local), cod.clone());
        let target = cg.union(&u_tilde(&geo, cod)).expect("same codomain").minimize();
        Ok(target
            .inverse_homomorphism(spec.alphabet().clone(), &spec.pi_words(i))
            .expect("images over the codomain")
            .minimize())
    });
    let parts = parts.into_iter().collect::<Result<Vec<_>, GraphProdError>>()?;
    Ok(intersect_all(parts, spec.alphabet()))
}
