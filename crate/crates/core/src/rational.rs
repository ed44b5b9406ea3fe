//! Exact rational helpers.
//!
//! Densities and distances live in `[0, 1]`, but intermediate sums such as
//! `ν⁺(B) + ν⁺(C)` or `ν⁺(·) + 4ε` exceed one, and differences go negative,
//! so the underlying type is a signed `i128` ratio.

use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{0}` as a rational (expected `p/q` or an integer)")]
pub struct ParseRationalError(pub String);

pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(i128::from(num), i128::from(den))
}

pub fn int(n: u64) -> Rational {
    Rational::from_integer(i128::from(n))
}

/// `2^{-k}`
pub fn pow2_inv(k: u32) -> Rational {
    Rational::new(1, 1i128 << k)
}

pub fn abs_diff(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Parses `p/q`, `-p/q`, or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p = i128::from_str(p.trim()).map_err(|_| err())?;
            let q = i128::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => i128::from_str(text).map(Rational::from_integer).map_err(|_| err()),
    }
}

/// Always prints `p/q`, including `0/1` and `1/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Six significant digits.
pub fn format_float(r: &Rational) -> String {
    let v = to_f64(r);
    if v == 0.0 {
        return "0".to_string();
    }
    let digits = 6 - 1 - v.abs().log10().floor() as i32;
    let places = digits.max(0) as usize;
    format!("{v:.places$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("5/8").unwrap(), ratio(5, 8));
        assert_eq!(parse_rational("1").unwrap(), int(1));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn format_is_always_a_fraction() {
        assert_eq!(format_rational(&int(1)), "1/1");
        assert_eq!(format_rational(&ratio(0, 3)), "0/1");
        assert_eq!(format_rational(&ratio(6, 8)), "3/4");
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(&ratio(2, 3)), "0.666667");
        assert_eq!(format_float(&ratio(247_548, 1_000_000)), "0.247548");
        assert_eq!(format_float(&int(1)), "1.00000");
    }
}
