//! Exact rational arithmetic for degree and density thresholds.
//!
//! Every threshold comparison in the crate (average degree against `t`,
//! closed-neighbourhood minimum degree against `d/2`, certificate bounds)
//! goes through [`Rational`], never through floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseRationalError;

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_usize(n: usize) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n choose 2` as a rational, the scale factor of every density bound.
pub fn pairs(n: usize) -> Rational {
    from_usize(n * n.saturating_sub(1) / 2)
}

/// Largest integer not exceeding `r`.
pub fn floor_to_i64(r: &Rational) -> Option<i64> {
    r.floor().to_integer().to_i64()
}

/// Smallest integer not below `r`.
pub fn ceil_to_i64(r: &Rational) -> Option<i64> {
    r.ceil().to_integer().to_i64()
}

pub fn max(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

/// Numerator and denominator as `i64`, if they fit.
pub fn to_parts(r: &Rational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Renders `p/q`, or just `p` for integers.
pub fn display(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or an integer.
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    let bad = || ParseRationalError(text.to_string());
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(text).map_err(|_| bad())?;
            Ok(BigRational::from_integer(num))
        }
    }
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
