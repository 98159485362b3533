//! Lins-Mandel coloured graphs and the 3-manifolds they encode.
//!
//! The library builds the four-parameter family `G(n,p,q,m)` of 4-coloured
//! graphs, decides graph isomorphism both by brute-force propagation and by
//! modular arithmetic on the parameters, computes first homology of the
//! encoded spaces through an exact Smith normal form, and classifies the
//! spaces as branched cyclic coverings of two-bridge links together with a
//! symbolic geometry label.
//!
//! Entry points:
//!
//! - [`lins_mandel::LmParams`] / [`lins_mandel::build`] — graph construction,
//! - [`iso::are_isomorphic`] — exhaustive isomorphism decision,
//! - [`classify::classify_pair`] — the arithmetic isomorphism criterion,
//! - [`homology::h1`] — first integral homology,
//! - [`coverings::lm_to_covering`] — the branched-covering dictionary,
//! - [`survey`] — exhaustive cross-validation over a parameter range.

pub mod classify;
pub mod coverings;
pub mod graph;
pub mod homology;
pub mod iso;
pub mod lins_mandel;
mod modular;
pub mod snf;
pub mod survey;

/// Integer type used for homology matrices. Intermediate entries in a
/// Smith reduction can outgrow any fixed-width type, so this must be
/// arbitrary precision; [`snf::smith_normal_form`] itself is generic.
pub type HomologyInt = num_bigint::BigInt;

pub use graph::{ColoredGraph, GraphError, ResidueCensus};
pub use homology::AbelianGroup;
pub use iso::IsoWitness;
pub use lins_mandel::LmParams;
