//! Radial symbols `sum c_i r^(a_i)` on `[0, 1]` and their text form.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expression := ["-"] term (("+" | "-") term)*
//! term       := rational ["*" "r" ["^" rational]] | "r" ["^" rational]
//! rational   := integer ["/" positive-integer] | decimal
//! ```
//!
//! A bare rational is the constant term `c r^0`. Exponents must be nonnegative.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{to_f64, to_short_string};
use crate::exact::Rational;

/// Terms are sorted by strictly increasing exponent and carry no zero
/// coefficients; the empty list is the zero symbol.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RadialSymbol {
    terms: Vec<(Rational, Rational)>,
}

impl RadialSymbol {
    pub fn zero() -> Self {
        RadialSymbol { terms: Vec::new() }
    }

    /// `c * r^a`; panics on a negative exponent.
    pub fn monomial(c: Rational, a: Rational) -> Self {
        assert!(!a.is_negative(), "negative exponent in radial symbol");
        if c.is_zero() {
            return Self::zero();
        }
        RadialSymbol { terms: vec![(c, a)] }
    }

    /// `r^a` for an integer exponent.
    pub fn power(a: u64) -> Self {
        Self::monomial(Rational::one(), Rational::from_integer(BigInt::from(a)))
    }

    /// Merges equal exponents and drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut acc = Self::zero();
        for (c, a) in terms {
            if a.is_negative() {
                return Err(Error::InvalidParams(format!(
                    "negative exponent {} in radial symbol",
                    to_short_string(&a)
                )));
            }
            acc = &acc + &Self::monomial(c, a);
        }
        Ok(acc)
    }

    /// `(coefficient, exponent)` pairs, ascending in exponent.
    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(_, a)| a.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RadialSymbol { terms: self.terms.iter().map(|(k, a)| (k * c, a.clone())).collect() }
    }

    /// Multiplies by `r^t`; the caller guarantees all exponents stay nonnegative.
    pub fn shift_exponents(&self, t: &Rational) -> Result<Self> {
        Self::from_terms(self.terms.iter().map(|(c, a)| (c.clone(), a + t)))
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, a)| to_f64(c) * r.powf(to_f64(a)))
            .sum()
    }
}

impl std::ops::Add for &RadialSymbol {
    type Output = RadialSymbol;
    fn add(self, rhs: &RadialSymbol) -> RadialSymbol {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let take_left = j >= rhs.terms.len()
                || (i < self.terms.len() && self.terms[i].1 < rhs.terms[j].1);
            let take_right = i >= self.terms.len()
                || (j < rhs.terms.len() && rhs.terms[j].1 < self.terms[i].1);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                out.push(rhs.terms[j].clone());
                j += 1;
            } else {
                let c = &self.terms[i].0 + &rhs.terms[j].0;
                if !c.is_zero() {
                    out.push((c, self.terms[i].1.clone()));
                }
                i += 1;
                j += 1;
            }
        }
        RadialSymbol { terms: out }
    }
}

impl fmt::Display for RadialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, a)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if a.is_zero() {
                f.write_str(&to_short_string(&mag))?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", to_short_string(&mag))?;
            }
            f.write_str("r")?;
            if !a.is_one() {
                write!(f, "^{}", to_short_string(a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialSymbol({self})")
    }
}

impl FromStr for RadialSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser { src: s.as_bytes(), pos: 0 }.expression()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expression(&mut self) -> Result<RadialSymbol> {
        let mut acc = RadialSymbol::zero();
        let mut negate = self.eat(b'-');
        loop {
            let (c, a) = self.term()?;
            let c = if negate { -c } else { c };
            acc = &acc + &RadialSymbol::monomial(c, a);
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(other) => return self.err(format!("unexpected {:?}", other as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Rational, Rational)> {
        match self.peek() {
            Some(b'r') => {
                self.pos += 1;
                Ok((Rational::one(), self.exponent()?))
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let c = self.rational()?;
                if self.eat(b'*') {
                    if !self.eat(b'r') {
                        return self.err("expected 'r' after '*'");
                    }
                    Ok((c, self.exponent()?))
                } else {
                    Ok((c, Rational::zero()))
                }
            }
            Some(b) => self.err(format!("expected a term, found {:?}", b as char)),
            None => self.err("expected a term, found end of input"),
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        if !self.eat(b'^') {
            return Ok(Rational::one());
        }
        if self.peek() == Some(b'-') {
            return self.err("exponents must be nonnegative");
        }
        self.rational()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let whole = self.digits().to_owned();
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let frac = self.digits().to_owned();
            if frac.is_empty() {
                return self.err("digits expected after '.'");
            }
            return crate::exact::parse_rational(&format!("{whole}.{frac}"))
                .map_err(|_| Error::Parse { pos: start, msg: "bad decimal".into() });
        }
        if whole.is_empty() {
            return self.err("number expected");
        }
        let n = BigInt::from_str(&whole).unwrap();
        if self.eat(b'/') {
            self.skip_ws();
            let den = self.digits().to_owned();
            if den.is_empty() {
                return self.err("denominator expected after '/'");
            }
            let d = BigInt::from_str(&den).unwrap();
            if d.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }
}
