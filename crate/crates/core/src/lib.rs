//! Exact inverses of triangular matrices over rings, computed as signed sums
//! over alternating paths of a matching in the bipartite graph of the
//! matrix, together with the pattern and tree results that follow from that
//! description.
//!
//! - [`ring`]: rationals, GF(2) and square blocks of rationals.
//! - [`matrix`]: dense matrices over those rings and the forward-substitution
//!   inverse used as an oracle.
//! - [`bigraph`]: `G(A)`, matchings, peeling, alternating paths, `G/M`.
//! - [`pathinv`]: the path-sum inverse and the GF(2) parity rule.
//! - [`treegen`]: path matrices of trees for arbitrary matchings, tree and
//!   matching enumeration.
//! - [`pattern`]: coronas, pattern preservation, the family of inverse-tree
//!   graphs, isomorphism.
//! - [`verify`]: per-instance property checks and seeded sweeps.
//! - [`json`]: the document formats used by the command-line tool.
//!
//! Indices are 0-based throughout the library.

pub mod bigraph;
pub mod error;
pub mod graph;
pub mod json;
pub mod matrix;
pub mod par;
pub mod pathinv;
pub mod pattern;
#[cfg(test)]
mod proptests;
pub mod random;
pub mod ring;
pub mod treegen;
pub mod verify;

pub use bigraph::{
    contract_matching, count_perfect_matchings, enumerate_alternating_paths, peel_unique_matching, AlternatingPath,
    BipartiteGraph, Matching, Peeling, Sign,
};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use matrix::{Matrix, PatternMatrix};
pub use par::Execution;
pub use pathinv::{gf2_parity_inverse, path_inverse, path_inverse_with, PathInverseOptions};
pub use pattern::{check_theorem3, generate_family_fk, inverse_tree_graph, is_corona, is_isomorphic};
pub use ring::{Block, Rational, RingSpec, RingValue};
pub use treegen::{certify_tree, induced_forest, outer_inverse_check, path_matrix, TreeInstance};
