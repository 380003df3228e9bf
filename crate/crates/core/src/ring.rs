//! Exact scalars.
//!
//! Three rings are supported behind one contract: the rationals, GF(2), and
//! square blocks of rationals of a fixed order. The block ring is the
//! noncommutative case, so every product in this crate keeps its operands in
//! the order they are written.
//!
//! Rationals keep an `i64` fast path and switch to arbitrary precision only
//! when an intermediate result no longer fits. The representation is always
//! canonical (lowest terms, positive denominator, small whenever it fits), so
//! structural equality is value equality.

use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ambient ring of a value or matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rational,
    Gf2,
    /// `d x d` blocks of rationals.
    Block(NonZeroUsize),
}

impl RingSpec {
    pub fn block(dim: usize) -> Result<Self> {
        NonZeroUsize::new(dim)
            .map(RingSpec::Block)
            .ok_or_else(|| Error::InvalidValue("block dimension must be at least 1".into()))
    }

    pub fn block_dim(&self) -> Option<usize> {
        match self {
            RingSpec::Block(d) => Some(d.get()),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            RingSpec::Rational => "rational",
            RingSpec::Gf2 => "gf2",
            RingSpec::Block(_) => "block",
        }
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self, RingSpec::Block(d) if d.get() > 1)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Block(d) => write!(f, "block({d})"),
            other => f.write_str(other.kind_name()),
        }
    }
}

// ---------------------------------------------------------------------------
// Rationals

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// `num / den` with `den > 0` and `gcd(num, den) = 1`.
    Small { num: i64, den: i64 },
    /// Only used when the value does not fit `Small`.
    Big(BigRational),
}

/// Exact rational number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// `num / den`, reduced. Fails on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidValue("zero denominator".into()));
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    pub fn from_big(value: BigRational) -> Self {
        // BigRational::new already reduces; from_big is also the
        // normalisation point for results of big arithmetic.
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(num), Some(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(value)),
        }
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(BigRational::new(BigInt::from(num), BigInt::from(den)))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }

    /// Numerator and denominator as decimal strings.
    pub fn parts(&self) -> (String, String) {
        match &self.0 {
            Repr::Small { num, den } => (num.to_string(), den.to_string()),
            Repr::Big(b) => (b.numer().to_string(), b.denom().to_string()),
        }
    }

    /// Numerator and denominator, when both fit in `i64`.
    pub fn to_i64_parts(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small { num, den } => Some((num, den)),
            Repr::Big(_) => None,
        }
    }

    pub fn add(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    Self::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + rhs.to_big()),
        }
    }

    pub fn sub(&self, rhs: &Rational) -> Rational {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if *a == 0 || *c == 0 {
                    return Rational::zero();
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * rhs.to_big()),
        }
    }

    pub fn neg(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Rational(Repr::Small { num: n, den: *den }),
                None => Self::from_big(-self.to_big()),
            },
            Repr::Big(b) => Self::from_big(-b.clone()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        })
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.parts();
        if den == "1" {
            f.write_str(&num)
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"` with arbitrary-precision integers.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::from_big(BigRational::new(num, den)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

// ---------------------------------------------------------------------------
// Blocks

/// Square matrix of rationals used as a single ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    dim: usize,
    data: Vec<Rational>,
}

impl Block {
    pub fn zero(dim: usize) -> Self {
        Block { dim, data: vec![Rational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut b = Block::zero(dim);
        for i in 0..dim {
            b.data[i * dim + i] = Rational::one();
        }
        b
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidValue("empty block".into()));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidValue("block must be square".into()));
        }
        Ok(Block { dim, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for literals: `Block::from_i64(&[&[1, 0], &[0, 1]])`.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Block::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.data.chunks(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    fn zip_with(&self, rhs: &Block, f: impl Fn(&Rational, &Rational) -> Rational) -> Block {
        Block { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, rhs: &Block) -> Block {
        self.zip_with(rhs, Rational::add)
    }

    pub fn sub(&self, rhs: &Block) -> Block {
        self.zip_with(rhs, Rational::sub)
    }

    pub fn neg(&self) -> Block {
        Block { dim: self.dim, data: self.data.iter().map(Rational::neg).collect() }
    }

    pub fn mul(&self, rhs: &Block) -> Block {
        let d = self.dim;
        let mut out = Block::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.data[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &rhs.data[k * d + j];
                    if !b.is_zero() {
                        let cell = &mut out.data[i * d + j];
                        *cell = cell.add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan elimination on `[self | I]`. `None` when singular.
    pub fn inverse(&self) -> Option<Block> {
        let d = self.dim;
        let mut left = self.data.clone();
        let mut right = Block::identity(d).data;
        for col in 0..d {
            let pivot = (col..d).find(|&r| !left[r * d + col].is_zero())?;
            if pivot != col {
                for j in 0..d {
                    left.swap(pivot * d + j, col * d + j);
                    right.swap(pivot * d + j, col * d + j);
                }
            }
            let scale = left[col * d + col].recip()?;
            for j in 0..d {
                left[col * d + j] = left[col * d + j].mul(&scale);
                right[col * d + j] = right[col * d + j].mul(&scale);
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let factor = left[r * d + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..d {
                    left[r * d + j] = left[r * d + j].sub(&factor.mul(&left[col * d + j]));
                    right[r * d + j] = right[r * d + j].sub(&factor.mul(&right[col * d + j]));
                }
            }
        }
        Some(Block { dim: d, data: right })
    }
}

// ---------------------------------------------------------------------------
// Ring values

/// An element of one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingValue {
    Rational(Rational),
    Gf2(bool),
    Block(Block),
}

impl RingValue {
    pub fn spec(&self) -> RingSpec {
        match self {
            RingValue::Rational(_) => RingSpec::Rational,
            RingValue::Gf2(_) => RingSpec::Gf2,
            RingValue::Block(b) => RingSpec::Block(NonZeroUsize::new(b.dim).expect("blocks are never empty")),
        }
    }

    pub fn zero(spec: RingSpec) -> Self {
        match spec {
            RingSpec::Rational => RingValue::Rational(Rational::zero()),
            RingSpec::Gf2 => RingValue::Gf2(false),
            RingSpec::Block(d) => RingValue::Block(Block::zero(d.get())),
        }
    }

    pub fn one(spec: RingSpec) -> Self {
        match spec {
            RingSpec::Rational => RingValue::Rational(Rational::one()),
            RingSpec::Gf2 => RingValue::Gf2(true),
            RingSpec::Block(d) => RingValue::Block(Block::identity(d.get())),
        }
    }

    /// The image of an integer: `n` itself, `n mod 2`, or `n` times the identity block.
    pub fn from_i64(spec: RingSpec, n: i64) -> Self {
        match spec {
            RingSpec::Rational => RingValue::Rational(Rational::from_integer(n)),
            RingSpec::Gf2 => RingValue::Gf2(n.rem_euclid(2) == 1),
            RingSpec::Block(d) => {
                let mut b = Block::zero(d.get());
                for i in 0..d.get() {
                    b.data[i * d.get() + i] = Rational::from_integer(n);
                }
                RingValue::Block(b)
            }
        }
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        Rational::new(num, den).map(RingValue::Rational)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Rational(r) => r.is_zero(),
            RingValue::Gf2(b) => !b,
            RingValue::Block(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == RingValue::one(self.spec())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RingValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_block(&self) -> Option<&Block> {
        match self {
            RingValue::Block(b) => Some(b),
            _ => None,
        }
    }

    fn check(&self, rhs: &RingValue) -> Result<()> {
        let (left, right) = (self.spec(), rhs.spec());
        if left == right {
            Ok(())
        } else {
            Err(Error::SpecMismatch { left, right })
        }
    }

    pub fn add(&self, rhs: &RingValue) -> Result<RingValue> {
        self.check(rhs)?;
        Ok(match (self, rhs) {
            (RingValue::Rational(a), RingValue::Rational(b)) => RingValue::Rational(a.add(b)),
            (RingValue::Gf2(a), RingValue::Gf2(b)) => RingValue::Gf2(a ^ b),
            (RingValue::Block(a), RingValue::Block(b)) => RingValue::Block(a.add(b)),
            _ => unreachable!("specs were checked"),
        })
    }

    pub fn sub(&self, rhs: &RingValue) -> Result<RingValue> {
        self.check(rhs)?;
        self.add(&rhs.neg())
    }

    /// `self * rhs`, in that order.
    pub fn mul(&self, rhs: &RingValue) -> Result<RingValue> {
        self.check(rhs)?;
        Ok(match (self, rhs) {
            (RingValue::Rational(a), RingValue::Rational(b)) => RingValue::Rational(a.mul(b)),
            (RingValue::Gf2(a), RingValue::Gf2(b)) => RingValue::Gf2(a & b),
            (RingValue::Block(a), RingValue::Block(b)) => RingValue::Block(a.mul(b)),
            _ => unreachable!("specs were checked"),
        })
    }

    pub fn neg(&self) -> RingValue {
        match self {
            RingValue::Rational(a) => RingValue::Rational(a.neg()),
            RingValue::Gf2(a) => RingValue::Gf2(*a),
            RingValue::Block(a) => RingValue::Block(a.neg()),
        }
    }

    /// Two-sided multiplicative inverse.
    pub fn inv(&self) -> Result<RingValue> {
        match self {
            RingValue::Rational(a) => a.recip().map(RingValue::Rational),
            RingValue::Gf2(a) => a.then_some(RingValue::Gf2(true)),
            RingValue::Block(a) => a.inverse().map(RingValue::Block),
        }
        .ok_or(Error::NotInvertible)
    }

    /// In-place `self += rhs`.
    pub fn add_assign(&mut self, rhs: &RingValue) -> Result<()> {
        *self = self.add(rhs)?;
        Ok(())
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Rational(r) => write!(f, "{r}"),
            RingValue::Gf2(b) => write!(f, "{}", u8::from(*b)),
            RingValue::Block(b) => {
                f.write_str("[")?;
                for (i, row) in b.rows().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for (j, v) in row.iter().enumerate() {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{v}")?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
        }
    }
}
