//! Graph products of vertex groups and their Geo / ConjGeo automata.

pub mod builtin;
mod construct;
mod spec;

pub use construct::{conj_geodesic_language, geo_split_pattern, geodesic_language, lift_to_codomain, u_tilde};
pub use spec::{GraphProductSpec, PiImage};

#[derive(Debug, thiserror::Error)]
pub enum GraphProdError {
    #[error("invalid graph product: {0}")]
    Spec(String),
    #[error("vertex geodesic automaton rejects the empty word")]
    EmptyWordRejected,
}
