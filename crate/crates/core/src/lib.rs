//! Geodesic and conjugacy-geodesic languages of graph products, free and
//! direct products and amalgams of finite groups, with exact automata and
//! rational growth series.

pub mod series;
pub mod fsa;
pub mod caps;
pub mod groups;
pub mod par;
pub mod graphprod;
pub mod rewriting;
pub mod oracle;
pub mod constructions;
pub mod input;
pub mod pipeline;
pub mod worked;
