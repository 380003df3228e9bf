//! Dense exact matrices over a [`RingSpec`].

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Block, Rational, RingSpec, RingValue};

/// Dense `rows x cols` matrix, row-major. All entries share `spec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    spec: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<RingValue>,
}

/// Zero-nonzero pattern of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Matrix {
    pub fn zeros(spec: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix { spec, rows, cols, entries: vec![RingValue::zero(spec); rows * cols] }
    }

    pub fn identity(spec: RingSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(spec, n, n);
        for i in 0..n {
            m.entries[i * n + i] = RingValue::one(spec);
        }
        m
    }

    /// Builds a matrix from nested rows. Every row must have the same length
    /// and every entry must belong to `spec`.
    pub fn from_rows(spec: RingSpec, rows: Vec<Vec<RingValue>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries: Vec<RingValue> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|v| v.spec() != spec) {
            return Err(Error::SpecMismatch { left: spec, right: bad.spec() });
        }
        Ok(Matrix { spec, rows: m, cols: n, entries })
    }

    /// `rows x cols` matrix with entries `f(i, j)`.
    pub fn from_fn(
        spec: RingSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingValue,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if v.spec() != spec {
                    return Err(Error::SpecMismatch { left: spec, right: v.spec() });
                }
                entries.push(v);
            }
        }
        Ok(Matrix { spec, rows, cols, entries })
    }

    /// Integer literal matrix, mapped into `spec` by [`RingValue::from_i64`].
    pub fn from_i64(spec: RingSpec, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            spec,
            rows.iter().map(|r| r.iter().map(|&v| RingValue::from_i64(spec, v)).collect()).collect(),
        )
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingValue {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RingValue) -> Result<()> {
        if value.spec() != self.spec {
            return Err(Error::SpecMismatch { left: self.spec, right: value.spec() });
        }
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.entries[i * self.cols + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[RingValue] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[RingValue]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingValue::is_zero)
    }

    /// Exact product `self * rhs`. Zero entries are skipped, so sparse
    /// operands are cheap even though storage is dense.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.spec != rhs.spec {
            return Err(Error::SpecMismatch { left: self.spec, right: rhs.spec });
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.spec, self.rows, rhs.cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.row(k).iter().enumerate() {
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j].add_assign(&a.mul(b)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix { spec: self.spec, rows: self.cols, cols: self.rows, entries }
    }

    pub fn is_lower_triangular(&self) -> Result<bool> {
        self.require_square()?;
        Ok((0..self.rows).all(|i| self.row(i)[i + 1..].iter().all(RingValue::is_zero)))
    }

    pub fn pattern(&self) -> PatternMatrix {
        PatternMatrix { rows: self.rows, cols: self.cols, bits: self.entries.iter().map(|v| !v.is_zero()).collect() }
    }

    /// `[[O, A], [A^T, O]]`: the adjacency matrix of the bipartite graph of `A`.
    pub fn symmetric_embed(&self) -> Matrix {
        let (m, n) = (self.rows, self.cols);
        let mut out = Matrix::zeros(self.spec, m + n, m + n);
        for i in 0..m {
            for j in 0..n {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.entries[i * (m + n) + m + j] = v.clone();
                    out.entries[(m + j) * (m + n) + i] = v.clone();
                }
            }
        }
        out
    }

    /// Inverse of a lower triangular matrix by forward substitution on
    /// `B A = I`, one row at a time:
    /// `b_rr = a_rr^-1` and `b_rj = -a_rr^-1 * sum_{j <= k < r} a_rk b_kj`.
    #[allow(clippy::needless_range_loop)]
    pub fn forward_substitution_inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        if !self.is_lower_triangular()? {
            return Err(Error::NotTriangular);
        }
        let n = self.rows;
        let diag_inv = self.diagonal_inverses()?;
        let mut b = Matrix::zeros(self.spec, n, n);
        for r in 0..n {
            let pivot = &diag_inv[r];
            b.entries[r * n + r] = pivot.clone();
            for j in 0..r {
                let mut acc = RingValue::zero(self.spec);
                for k in j..r {
                    let a_rk = self.get(r, k);
                    let b_kj = b.get(k, j);
                    if !a_rk.is_zero() && !b_kj.is_zero() {
                        acc.add_assign(&a_rk.mul(b_kj)?)?;
                    }
                }
                if !acc.is_zero() {
                    b.entries[r * n + j] = pivot.mul(&acc)?.neg();
                }
            }
        }
        Ok(b)
    }

    /// Inverses of the diagonal entries; reports the first that fails.
    pub(crate) fn diagonal_inverses(&self) -> Result<Vec<RingValue>> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).inv().map_err(|_| Error::SingularDiagonal(i))).collect()
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix { spec: self.spec, rows: rows.len(), cols: cols.len(), entries }
    }

    /// Scatters `self` into a `rows x cols` zero matrix at the given positions.
    pub fn embed_into(&self, rows: usize, cols: usize, row_at: &[usize], col_at: &[usize]) -> Result<Matrix> {
        if row_at.len() != self.rows || col_at.len() != self.cols {
            return Err(Error::DimensionMismatch("index maps do not match the matrix".into()));
        }
        let mut out = Matrix::zeros(self.spec, rows, cols);
        for (i, &ri) in row_at.iter().enumerate() {
            for (j, &cj) in col_at.iter().enumerate() {
                out.entries[ri * cols + cj] = self.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Expands a block-ring matrix into the `(m d) x (n d)` rational matrix.
    pub fn flatten_blocks(&self) -> Result<Matrix> {
        let d =
            self.spec.block_dim().ok_or_else(|| Error::InvalidValue("flatten_blocks needs a block matrix".into()))?;
        Matrix::from_fn(RingSpec::Rational, self.rows * d, self.cols * d, |r, c| {
            let block = self.get(r / d, c / d).as_block().expect("block entries");
            RingValue::Rational(block.get(r % d, c % d).clone())
        })
    }

    /// Inverse of [`flatten_blocks`](Self::flatten_blocks).
    pub fn partition_blocks(&self, dim: usize) -> Result<Matrix> {
        let spec = RingSpec::block(dim)?;
        if self.spec != RingSpec::Rational || !self.rows.is_multiple_of(dim) || !self.cols.is_multiple_of(dim) {
            return Err(Error::DimensionMismatch(format!(
                "cannot partition a {}x{} {} matrix into {dim}x{dim} blocks",
                self.rows, self.cols, self.spec
            )));
        }
        Matrix::from_fn(spec, self.rows / dim, self.cols / dim, |bi, bj| {
            let rows = (0..dim)
                .map(|r| {
                    (0..dim)
                        .map(|c| {
                            self.get(bi * dim + r, bj * dim + c).as_rational().cloned().unwrap_or_else(Rational::zero)
                        })
                        .collect()
                })
                .collect();
            RingValue::Block(Block::from_rows(rows).expect("dim >= 1"))
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.iter_rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl PatternMatrix {
    pub fn new(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != rows * cols {
            return Err(Error::DimensionMismatch("pattern size".into()));
        }
        Ok(PatternMatrix { rows, cols, bits })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Entrywise OR of two same-shape patterns.
    pub fn union(&self, other: &PatternMatrix) -> Result<PatternMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("pattern shapes differ".into()));
        }
        Ok(PatternMatrix {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.bits.chunks(self.cols.max(1)).take(self.rows).map(|r| r.iter().map(|&b| u8::from(b)).collect()).collect()
    }
}
