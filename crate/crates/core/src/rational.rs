//! Exact rational numbers and their extension with positive infinity.
//!
//! Every numeric value in this crate is an arbitrary-precision rational;
//! there is no floating point anywhere. `Rational` is re-exported from
//! `num-rational` (canonical reduced form, positive denominator), and
//! [`ExtRational`] adjoins the single value `∞` used by weighted relations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Parses `"p/q"` or plain integer text into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    match Rational::from_str(t) {
        Ok(q) => Ok(q),
        Err(_) => Err(Error::input(format!("cannot parse rational from {t:?}"))),
    }
}

pub fn rational_from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for small rational constants in tests and fixtures.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A rational extended with positive infinity.
///
/// Infinity absorbs addition and is preserved by every nonnegative scaling,
/// including scaling by zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtRational::Finite(rational_from_int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinite => None,
        }
    }

    /// Scales by a nonnegative rational. `0 · ∞ = ∞`.
    pub fn scale(&self, c: &Rational) -> Result<ExtRational> {
        if c.is_negative() {
            return Err(Error::input(format!(
                "cannot scale an extended rational by the negative constant {c}"
            )));
        }
        Ok(match self {
            ExtRational::Finite(q) => ExtRational::Finite(q * c),
            ExtRational::Infinite => ExtRational::Infinite,
        })
    }
}

impl Add<&ExtRational> for &ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinite,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Infinite, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{q}"),
            ExtRational::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "infinity" || t == "∞" {
            Ok(ExtRational::Infinite)
        } else {
            Ok(ExtRational::Finite(parse_rational(t)?))
        }
    }
}
