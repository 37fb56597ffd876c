//! Helpers around [`BigRational`], which backs every exact scalar.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Always `"num/den"`, including integers (`"3/1"`).
pub fn to_ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Short form: `"3"`, `"-2/3"`.
pub fn to_short_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"n"`, `"n/d"` (d > 0) or a decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad("bad numerator"))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad("bad denominator"))?;
        if !d.is_positive() {
            return Err(bad("denominator must be positive"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, fracpart)) = s.split_once('.') {
        if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole_val = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole_digits).map_err(|_| bad("bad decimal"))?
        };
        let scale = num_traits::pow(BigInt::from(10), fracpart.len());
        let frac_val = BigInt::from_str(fracpart).map_err(|_| bad("bad decimal"))?;
        let q = Rational::new(whole_val * &scale + frac_val, scale);
        return Ok(if negative { -q } else { q });
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad("bad integer"))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fallback for magnitudes num-rational refuses to convert
        let (n, d) = (log2_abs(q.numer()), log2_abs(q.denom()));
        let mag = (n - d).exp2();
        if q.is_negative() {
            -mag
        } else {
            mag
        }
    })
}

/// log2 |n| for n != 0, accurate to ~1e-15 relative.
pub(crate) fn log2_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 60 {
        return n.abs().to_f64().unwrap().log2();
    }
    let shift = bits - 60;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap().log2() + shift as f64
}

pub(crate) fn is_nonneg_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("0.125").unwrap(), frac(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn formats() {
        assert_eq!(to_ratio_string(&int(3)), "3/1");
        assert_eq!(to_short_string(&frac(-2, 3)), "-2/3");
        assert_eq!(to_short_string(&int(0)), "0");
    }

    #[test]
    fn log2_of_large_integers() {
        let big = num_traits::pow(BigInt::from(3), 200);
        assert!((log2_abs(&big) - 200.0 * 3f64.log2()).abs() < 1e-9);
    }
}
