//! Arbitrary-precision integers with an inline fast path.
//!
//! Almost every coefficient met in practice fits in an `i64`; those stay
//! inline and only promote to a heap `BigInt` when an operation overflows.
//! The representation is normalised: `Big` never holds a value that fits
//! in `i64`, so derived equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_even(&self) -> bool {
        match self {
            Int::Small(v) => v & 1 == 0,
            Int::Big(b) => b.is_even(),
        }
    }

    /// Number of trailing zero bits; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<u64> {
        match self {
            Int::Small(0) => None,
            Int::Small(v) => Some(v.trailing_zeros() as u64),
            Int::Big(b) => b.trailing_zeros(),
        }
    }

    /// Exact division by `2^bits`; the caller guarantees divisibility.
    pub fn shr_exact(&self, bits: u64) -> Int {
        if bits == 0 {
            return self.clone();
        }
        match self {
            Int::Small(v) if bits < 64 => Int::Small(v >> bits),
            // exactness leaves only zero here
            Int::Small(_) => Int::Small(0),
            Int::Big(b) => Int::from_big(b >> bits),
        }
    }

    /// Multiplication by `2^bits`.
    pub fn shl(&self, bits: u64) -> Int {
        if bits == 0 || self.is_zero() {
            return self.clone();
        }
        if let Int::Small(v) = self {
            if bits < 63 {
                if let Some(r) = v.checked_mul(1i64 << bits) {
                    return Int::Small(r);
                }
            }
        }
        Int::from_big(self.to_big() << bits)
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::from_big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Int::Small(v) => *v as f64,
            Int::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    /// Bit length of the absolute value.
    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }

    pub fn add_ref(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_add(*b) {
                Some(r) => Int::Small(r),
                None => Int::from_big(BigInt::from(*a) + BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn sub_ref(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_sub(*b) {
                Some(r) => Int::Small(r),
                None => Int::from_big(BigInt::from(*a) - BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() - other.to_big()),
        }
    }

    pub fn mul_ref(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(r) => Int::Small(r),
                None => Int::from_big(BigInt::from(*a) * BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() * other.to_big()),
        }
    }

    pub fn neg_ref(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(r) => Int::Small(r),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> Self {
        v.to_big()
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int::Small(v));
        }
        BigInt::from_str(s).map(Int::from_big)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Int> for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        self.add_ref(rhs)
    }
}

impl Sub<&Int> for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        self.sub_ref(rhs)
    }
}

impl Mul<&Int> for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        self.mul_ref(rhs)
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_shifts_of_zero() {
        assert_eq!(Int::Small(0).shr_exact(100), Int::Small(0));
        assert_eq!(Int::Small(i64::MIN).shr_exact(63), Int::Small(-1));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Int::Small(i64::MAX);
        let b = &a + &Int::ONE;
        assert!(matches!(b, Int::Big(_)));
        let c = &b - &Int::ONE;
        assert_eq!(c, Int::Small(i64::MAX));
        let sq = &a * &a;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        assert_eq!(Int::Small(i64::MIN).neg_ref().to_string(), "9223372036854775808");
    }

    #[test]
    fn shifts_and_parity() {
        let x = Int::Small(3).shl(70);
        assert_eq!(x.trailing_zeros(), Some(70));
        assert_eq!(x.shr_exact(70), Int::Small(3));
        assert!(x.is_even());
        assert_eq!(Int::ZERO.trailing_zeros(), None);
        assert_eq!("-123456789012345678901234567890".parse::<Int>().unwrap().abs().to_string(),
            "123456789012345678901234567890");
    }
}
