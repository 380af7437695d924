//! Exact rationals for degree bounds and tuning parameters.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Every degree bound, average degree and tuning parameter in this crate is an
/// exact rational; floating point never decides an inequality.
pub type Rational = Ratio<i64>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Parses `"3"`, `"8/5"` or a finite decimal such as `"3.55"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::precondition(format!("not a rational number: {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return Err(bad());
    }
    let mut value = Rational::zero();
    if !whole.is_empty() {
        value = int(whole.parse().map_err(|_| bad())?);
    }
    if !frac.is_empty() {
        let den = 10i64.pow(frac.len() as u32);
        value += Rational::new(frac.parse().map_err(|_| bad())?, den);
    }
    Ok(if negative { -value } else { value })
}

/// `⌈r⌉` for a nonnegative rational.
pub fn ceil_u(r: Rational) -> usize {
    debug_assert!(r >= Rational::zero());
    r.ceil().to_integer() as usize
}

/// `⌊r⌋` for a nonnegative rational.
pub fn floor_u(r: Rational) -> usize {
    debug_assert!(r >= Rational::zero());
    r.floor().to_integer() as usize
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) fn is_positive(r: Rational) -> bool {
    r > Rational::zero()
}

pub(crate) fn one() -> Rational {
    Rational::one()
}
