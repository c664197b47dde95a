//! Exact nonnegative rationals extended with `+∞`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Finite(BigRational),
    Infinite,
}

/// A value in `[0, +∞]` with exact rational arithmetic.
///
/// Multiplication follows the measure-theoretic convention `0 · ∞ = 0`, so a
/// null layer under an infinite height contributes nothing to an integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtRational(Repr);

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational(Repr::Finite(BigRational::zero()))
    }

    pub fn one() -> Self {
        ExtRational(Repr::Finite(BigRational::one()))
    }

    pub fn infinity() -> Self {
        ExtRational(Repr::Infinite)
    }

    /// Wraps a rational, rejecting negative values.
    pub fn finite(value: BigRational) -> Result<Self, Error> {
        if value.is_negative() {
            return Err(Error::NegativeValue(value.to_string()));
        }
        Ok(ExtRational(Repr::Finite(value)))
    }

    pub fn from_integer(n: u64) -> Self {
        ExtRational(Repr::Finite(BigRational::from_integer(BigInt::from(n))))
    }

    /// `numer / denom`; panics if `denom == 0`.
    pub fn ratio(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        ExtRational(Repr::Finite(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0, Repr::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Finite(r) if r.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Finite(r) => Some(r),
            Repr::Infinite => None,
        }
    }

    pub fn into_rational(self) -> Option<BigRational> {
        match self.0 {
            Repr::Finite(r) => Some(r),
            Repr::Infinite => None,
        }
    }

    /// `self - other` when it is defined and nonnegative.
    ///
    /// `∞ - finite = ∞`; `∞ - ∞` and negative differences give `None`.
    pub fn checked_sub(&self, other: &ExtRational) -> Option<ExtRational> {
        match (&self.0, &other.0) {
            (Repr::Finite(a), Repr::Finite(b)) if a >= b => {
                Some(ExtRational(Repr::Finite(a - b)))
            }
            (Repr::Finite(_), _) => None,
            (Repr::Infinite, Repr::Finite(_)) => Some(ExtRational::infinity()),
            (Repr::Infinite, Repr::Infinite) => None,
        }
    }

    pub fn min(self, other: ExtRational) -> ExtRational {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: ExtRational) -> ExtRational {
        std::cmp::max(self, other)
    }
}

impl From<BigRational> for ExtRational {
    /// Panics on negative input; use [`ExtRational::finite`] for fallible conversion.
    fn from(value: BigRational) -> Self {
        ExtRational::finite(value).expect("negative rational")
    }
}

impl From<u64> for ExtRational {
    fn from(value: u64) -> Self {
        ExtRational::from_integer(value)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Finite(a), Repr::Finite(b)) => a.cmp(b),
            (Repr::Finite(_), Repr::Infinite) => Ordering::Less,
            (Repr::Infinite, Repr::Finite(_)) => Ordering::Greater,
            (Repr::Infinite, Repr::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (&self.0, &rhs.0) {
            (Repr::Finite(a), Repr::Finite(b)) => ExtRational(Repr::Finite(a + b)),
            _ => ExtRational::infinity(),
        }
    }
}

impl Add for ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: ExtRational) -> ExtRational {
        &self + &rhs
    }
}

impl Mul for &ExtRational {
    type Output = ExtRational;

    fn mul(self, rhs: &ExtRational) -> ExtRational {
        if self.is_zero() || rhs.is_zero() {
            return ExtRational::zero();
        }
        match (&self.0, &rhs.0) {
            (Repr::Finite(a), Repr::Finite(b)) => ExtRational(Repr::Finite(a * b)),
            _ => ExtRational::infinity(),
        }
    }
}

impl Mul for ExtRational {
    type Output = ExtRational;

    fn mul(self, rhs: ExtRational) -> ExtRational {
        &self * &rhs
    }
}

impl Sum for ExtRational {
    fn sum<I: Iterator<Item = ExtRational>>(iter: I) -> Self {
        iter.fold(ExtRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExtRational> for ExtRational {
    fn sum<I: Iterator<Item = &'a ExtRational>>(iter: I) -> Self {
        iter.fold(ExtRational::zero(), |acc, x| &acc + x)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Finite(r) => write!(f, "{r}"),
            Repr::Infinite => f.write_str("inf"),
        }
    }
}

/// Parses `"p/q"`, `"p"` or `"inf"`.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let r = match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
    };
    Ok(r)
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("inf") {
            return Ok(ExtRational::infinity());
        }
        ExtRational::finite(parse_rational(s)?)
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
