//! Exact rational arithmetic helpers.
//!
//! All probabilities in this crate are `BigRational`s: verdicts such as
//! "the noncontextual fraction equals 1" are yes/no statements, so nothing
//! may pass through floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for every probability in the crate.
pub type Rational = BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"a/b"` or a plain integer literal.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let numer: BigInt = n.trim().parse().map_err(|_| bad())?;
            let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(numer, denom))
        }
        None => {
            let numer: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(numer))
        }
    }
}

/// Renders in lowest terms, as `"a/b"` or a bare integer when `b = 1`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True when `0 <= value <= 1`.
pub fn is_probability(value: &Rational) -> bool {
    !value.is_negative() && *value <= one()
}
