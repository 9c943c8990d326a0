//! Exact rational numbers and their textual form.
//!
//! Every probability in the crate is a [`Rational`]. Text input accepts
//! `p/q`, plain integers and finite decimals; `0.4` parses to exactly `2/5`.
//! Output uses `p/q` (or `p` for integers), which parses back unchanged.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `true` when `value` lies in the closed unit interval.
pub fn is_probability(value: &Rational) -> bool {
    !value.is_negative() && *value <= Rational::one()
}

/// Parses `INTEGER | INTEGER "/" POSITIVE_INTEGER | finite decimal`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let text = input.trim();
    let err = |reason: &str| Error::InvalidRational {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if text.is_empty() {
        return Err(err("empty"));
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_integer(num).ok_or_else(|| err("numerator is not an integer"))?;
        let den_str = den.trim();
        if den_str.starts_with(['-', '+']) {
            return Err(err("denominator must be a positive integer"));
        }
        let den = parse_integer(den_str).ok_or_else(|| err("denominator is not an integer"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        let digits_ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
        if !digits_ok(whole) || !digits_ok(frac) || (whole.is_empty() && frac.is_empty()) {
            return Err(err("malformed decimal"));
        }
        let digits = format!("{whole}{frac}");
        let mantissa: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| err("malformed decimal"))?
        };
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_integer(text)
        .map(Rational::from_integer)
        .ok_or_else(|| err("not a rational number"))
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let text = text.trim();
    let body = text.strip_prefix(['-', '+']).unwrap_or(text);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Lossy conversion for human-readable output only.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}
