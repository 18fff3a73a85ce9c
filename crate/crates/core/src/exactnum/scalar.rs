use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact commutative ring with (partial) exact division.
///
/// Every matrix, graph weighting and determinant in this crate is generic
/// over this trait. The classical pipeline runs over [`BigInt`]; the quantum
/// pipeline runs over Laurent polynomials in `q^{1/4}`.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// `self / divisor` when the quotient exists in the ring, `None` otherwise
    /// (including division by zero).
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    /// The quantum integer `[n]`, if this ring contains `q^{1/2}`.
    fn quantum_integer(_n: i64) -> Option<Self> {
        None
    }

    /// `q^{quarters/4}`, if this ring contains `q^{1/4}`.
    fn q_power_quarters(_quarters: i64) -> Option<Self> {
        None
    }

    /// Canonical text form used in dumps and fixtures.
    fn to_canonical(&self) -> String;
}

impl Scalar for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    fn to_canonical(&self) -> String {
        self.to_string()
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self / divisor)
        }
    }

    fn to_canonical(&self) -> String {
        self.to_string()
    }
}

/// Integer `k`-th root of a non-negative integer, if it is a perfect power.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// Integer `k`-th root of a rational that must come out as an integer.
pub fn exact_integer_root(x: &BigRational, k: u32) -> Option<BigInt> {
    if !x.is_integer() {
        return None;
    }
    exact_root(x.numer(), k)
}

pub fn rational_to_integer(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
