//! Rational scalar type and constructors.

use crate::error::{Error, Result};
use alloc::format;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The universal scalar: arbitrary-precision rational in canonical form
/// (reduced, denominator > 0). Canonicalization is maintained by every
/// `Ratio` constructor and arithmetic operation.
pub type Rational = num_rational::BigRational;

/// Builds the reduced rational `num/den`. Zero denominators are rejected.
///
/// `rational(4, 6) = 2/3`, `rational(0, 5) = 0/1`, `rational(3, -9) = -1/3`.
pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let num = num.into();
    let den = den.into();
    if den.is_zero() {
        return Err(Error::domain("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Infallible convenience constructor for literal values.
///
/// Panics on a zero denominator; use [`rational`] for untrusted input.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"p/q"`, or `"-p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::domain(format!("malformed rational {s:?}"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = den_str.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `3^k` as an integer.
pub fn pow3(k: u32) -> BigInt {
    BigInt::from(3).pow(k)
}

/// `3^k` as a rational, for negative exponents too.
pub fn pow3_rat(k: i32) -> Rational {
    if k >= 0 {
        Rational::from_integer(pow3(k as u32))
    } else {
        Rational::new(BigInt::one(), pow3(k.unsigned_abs()))
    }
}

/// Checks the standing precondition `λ ∈ (0, 1)`.
pub fn validate_lambda(lambda: &Rational) -> Result<()> {
    if lambda.is_positive() && lambda < &Rational::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("lambda = {} not in (0, 1)", lambda)))
    }
}
