use thiserror::Error;

use crate::ring::RingSpec;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
///
/// Indices carried by variants are 0-based; the messages print them 1-based,
/// as the JSON documents do.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    SpecMismatch { left: RingSpec, right: RingSpec },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("NotSquare: matrix is {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("NotTriangular: matrix is not lower triangular")]
    NotTriangular,

    #[error("SingularDiagonal: diagonal entry {} is not invertible", .0 + 1)]
    SingularDiagonal(usize),

    #[error("NotInvertible: element has no two-sided inverse")]
    NotInvertible,

    #[error("NotInvertible: weight of matched edge (R{}, C{}) has no inverse", .row + 1, .col + 1)]
    EdgeNotInvertible { row: usize, col: usize },

    #[error("NoUniquePerfectMatching: peeling stalled with {remaining} unmatched vertex pairs")]
    NoUniquePerfectMatching { remaining: usize },

    #[error("NotBalanced: {rows} row vertices vs {cols} column vertices")]
    NotBalanced { rows: usize, cols: usize },

    #[error("SizeGuard: size {size} exceeds the limit {limit}")]
    SizeGuard { size: usize, limit: usize },

    #[error("UnitDiagonalRequired: GF(2) matrix must have ones on the diagonal")]
    UnitDiagonalRequired,

    #[error("NotATree: the bipartite graph of the matrix is not a tree")]
    NotATree,

    #[error("NoPerfectMatching: graph has no perfect matching")]
    NoPerfectMatching,

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("parse error: {0}")]
    Parse(String),
}
