//! Exact rationals.
//!
//! [`Rational`] is `num_rational::BigRational`: arbitrary-precision, always
//! reduced, with a positive denominator. Its `Display` renders `"num/den"`, or
//! just `"num"` when the denominator is one; [`parse_rational`] accepts both.

use alloc::format;
use alloc::string::ToString;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `1 / d` for a positive integer `d`.
pub fn reciprocal(d: &BigUint) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(d.clone()))
}

/// Nearest `f64` to an exact rational (handles numerators and denominators
/// far beyond the `f64` range).
pub fn to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let Some(v) = x.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    // Fall back to scaling both sides down to 64 significant bits.
    let num = x.numer();
    let den = x.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (num >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (den >> shift_d as usize).to_f64().unwrap_or(1.0);
    libm::ldexp(n / d, (shift_n - shift_d) as i32)
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".to_string()));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}
