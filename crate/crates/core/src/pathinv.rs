//! Inverse of a lower triangular matrix as a signed sum over alternating
//! paths.
//!
//! With `M` the diagonal matching of `G(A)`, the inverse `B = A^-1` has
//!
//! ```text
//! b_ij = sum over alternating paths P from C_i to R_j of sign(P) * w(P)
//! ```
//!
//! where `sign(P) = (-1)^((len(P) - 1) / 2)` and `w(P)` multiplies the weights
//! along `P` left to right, inverting the matching edges. Only diagonal
//! entries are ever inverted, so the formula holds over any ring in which the
//! diagonal is invertible, commutative or not.
//!
//! Each row of `B` comes from one depth-first walk out of `C_i`; rows are
//! independent and are computed in parallel when the `parallel` feature is on.

use crate::bigraph::{graph_with_diagonal, PathWalker};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::par::{map_range, Execution};
use crate::ring::{RingSpec, RingValue};

/// Largest order accepted by default. Dense path enumeration doubles in cost
/// with every extra row.
pub const DEFAULT_MAX_ORDER: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathInverseOptions {
    pub max_order: usize,
    pub execution: Execution,
}

impl Default for PathInverseOptions {
    fn default() -> Self {
        PathInverseOptions { max_order: DEFAULT_MAX_ORDER, execution: Execution::default() }
    }
}

pub fn path_inverse(a: &Matrix) -> Result<Matrix> {
    path_inverse_with(a, &PathInverseOptions::default())
}

pub fn path_inverse_with(a: &Matrix, opts: &PathInverseOptions) -> Result<Matrix> {
    check_triangular(a, opts.max_order)?;
    a.diagonal_inverses()?;
    let n = a.rows();
    let (g, mm) = graph_with_diagonal(a)?;
    let walker = PathWalker::new(&g, &mm)?;
    let rows = map_range(opts.execution, n, |i| walker.signed_sums_from(i));

    let mut b = Matrix::zeros(a.spec(), n, n);
    for (i, sums) in rows.into_iter().enumerate() {
        for (j, sum) in sums?.into_iter().enumerate() {
            let Some(sum) = sum else { continue };
            // Column indices strictly decrease along a path, so nothing
            // reaches a row above the starting column.
            assert!(j <= i, "alternating path from C{i} reached R{j} above the diagonal");
            b.set(i, j, sum)?;
        }
    }
    Ok(b)
}

/// Inverse over GF(2) of a unit lower triangular matrix, from path counts
/// alone: `b_ij = 1` iff the number of alternating paths from `C_i` to `R_j`
/// is odd.
pub fn gf2_parity_inverse(a: &Matrix) -> Result<Matrix> {
    gf2_parity_inverse_with(a, &PathInverseOptions::default())
}

pub fn gf2_parity_inverse_with(a: &Matrix, opts: &PathInverseOptions) -> Result<Matrix> {
    let counts = path_count_matrix_with(a, opts)?;
    let spec = RingSpec::Gf2;
    Matrix::from_rows(
        spec,
        counts.into_iter().map(|row| row.into_iter().map(|c| RingValue::Gf2(c % 2 == 1)).collect()).collect(),
    )
}

/// `counts[i][j]` = number of alternating paths from `C_i` to `R_j` in the
/// graph of a unit lower triangular GF(2) matrix.
pub fn path_count_matrix(a: &Matrix) -> Result<Vec<Vec<u64>>> {
    path_count_matrix_with(a, &PathInverseOptions::default())
}

fn path_count_matrix_with(a: &Matrix, opts: &PathInverseOptions) -> Result<Vec<Vec<u64>>> {
    if a.spec() != RingSpec::Gf2 {
        return Err(Error::SpecMismatch { left: RingSpec::Gf2, right: a.spec() });
    }
    check_triangular(a, opts.max_order)?;
    let n = a.rows();
    if (0..n).any(|i| !a.get(i, i).is_one()) {
        return Err(Error::UnitDiagonalRequired);
    }
    let (g, mm) = graph_with_diagonal(a)?;
    let walker = PathWalker::unweighted(&g, &mm)?;
    let counts = map_range(opts.execution, n, |i| walker.counts_from(i));
    for (i, row) in counts.iter().enumerate() {
        assert!(row[i + 1..].iter().all(|&c| c == 0), "path from C{i} reached above the diagonal");
    }
    Ok(counts)
}

fn check_triangular(a: &Matrix, max_order: usize) -> Result<()> {
    a.require_square()?;
    if a.rows() > max_order {
        return Err(Error::SizeGuard { size: a.rows(), limit: max_order });
    }
    if !a.is_lower_triangular()? {
        return Err(Error::NotTriangular);
    }
    Ok(())
}
