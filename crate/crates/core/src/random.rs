//! Seeded random instances. Everything is driven by [`ChaCha8Rng`], so a
//! seed fixes every matrix and graph that follows from it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraph::BipartiteGraph;
use crate::matrix::{Matrix, PatternMatrix};
use crate::ring::{Block, Rational, RingSpec, RingValue};

pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerators in `-9..=9`, denominators in `1..=9`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=9)).expect("nonzero denominator")
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(num, rng.gen_range(1..=9)).expect("nonzero denominator")
}

pub fn random_positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=9), rng.gen_range(1..=9)).expect("nonzero denominator")
}

/// A square block with small integer entries, redrawn until invertible.
pub fn random_invertible_block<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Block {
    loop {
        let b = random_block(rng, dim);
        if b.inverse().is_some() {
            return b;
        }
    }
}

/// A block with entries drawn from [`random_rational`], redrawn while zero.
pub fn random_nonzero_block<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Block {
    loop {
        let b = random_block(rng, dim);
        if !b.is_zero() {
            return b;
        }
    }
}

fn random_block<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Block {
    let rows = (0..dim).map(|_| (0..dim).map(|_| random_rational(rng)).collect()).collect();
    Block::from_rows(rows).expect("square")
}

/// A unit of the ring.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, spec: RingSpec) -> RingValue {
    match spec {
        RingSpec::Rational => RingValue::Rational(random_nonzero_rational(rng)),
        RingSpec::Gf2 => RingValue::Gf2(true),
        RingSpec::Block(d) => RingValue::Block(random_invertible_block(rng, d.get())),
    }
}

/// A nonzero element, not necessarily a unit.
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, spec: RingSpec) -> RingValue {
    match spec {
        RingSpec::Rational => RingValue::Rational(random_nonzero_rational(rng)),
        RingSpec::Gf2 => RingValue::Gf2(true),
        RingSpec::Block(d) => RingValue::Block(random_nonzero_block(rng, d.get())),
    }
}

/// Lower triangular `n x n` matrix with invertible diagonal; each entry below
/// the diagonal is nonzero with probability `density`.
pub fn random_lower_triangular<R: Rng + ?Sized>(rng: &mut R, spec: RingSpec, n: usize, density: f64) -> Matrix {
    let mut a = Matrix::zeros(spec, n, n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(density) {
                a.set(i, j, random_nonzero(rng, spec)).expect("in range");
            }
        }
        a.set(i, i, random_invertible(rng, spec)).expect("in range");
    }
    a
}

pub fn random_gf2_unitriangular<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Matrix {
    random_lower_triangular(rng, RingSpec::Gf2, n, density)
}

/// An `n x n` 0/1 rational matrix with each entry present with probability
/// `p`.
pub fn random_balanced_bigraph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> BipartiteGraph {
    let mut a = Matrix::zeros(RingSpec::Rational, n, n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(p) {
                a.set(i, j, RingValue::from_i64(RingSpec::Rational, 1)).expect("in range");
            }
        }
    }
    BipartiteGraph::from_matrix(&a)
}

/// A unit lower triangular 0/1 pattern with rows and columns shuffled
/// independently, so the graph has exactly one perfect matching.
pub fn random_permuted_triangular<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> BipartiteGraph {
    let base = random_lower_triangular(rng, RingSpec::Gf2, n, density);
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    let shuffled = base.select(&rows, &cols);
    let q = Matrix::from_fn(RingSpec::Rational, n, n, |i, j| {
        RingValue::from_i64(RingSpec::Rational, i64::from(shuffled.get(i, j).is_one()))
    })
    .expect("rational entries");
    BipartiteGraph::from_matrix(&q)
}

/// A rational matrix with the given pattern and independent positive weights.
pub fn positive_weighting<R: Rng + ?Sized>(rng: &mut R, pattern: &PatternMatrix) -> Matrix {
    Matrix::from_fn(RingSpec::Rational, pattern.rows(), pattern.cols(), |i, j| {
        if pattern.get(i, j) {
            RingValue::Rational(random_positive_rational(rng))
        } else {
            RingValue::zero(RingSpec::Rational)
        }
    })
    .expect("rational entries")
}

/// Closure handing out positive rational weights, for
/// [`crate::treegen::tree_biadjacency`].
pub fn positive_weights<R: Rng + ?Sized>(rng: &mut R) -> impl FnMut() -> RingValue + '_ {
    move || RingValue::Rational(random_positive_rational(rng))
}
