//! Canonical rational functions in one variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::{poly_gcd, Poly};
use super::rational::{to_short_string, Rational};
use super::roots::rational_roots;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1`, `den` monic, and zero stored as `0/1`.
///
/// Two values compare equal exactly when they denote the same function.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proportionality {
    BothZero,
    /// `a = lambda * b`, both nonzero.
    Proportional(Rational),
    NotProportional,
}

/// Rational poles of a reduced denominator.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PoleReport {
    /// Ascending by location, multiplicities >= 1.
    pub poles: Vec<(Rational, u32)>,
    /// Monic product of the denominator factors with no rational root.
    pub residual: Option<Poly>,
}

impl PoleReport {
    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.poles.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, at: &Rational) -> u32 {
        self.poles
            .iter()
            .find(|(x, _)| x == at)
            .map_or(0, |(_, m)| *m)
    }

    /// Multiset sum.
    pub fn merged(&self, other: &PoleReport) -> PoleReport {
        let mut poles = self.poles.clone();
        for (x, m) in &other.poles {
            match poles.iter_mut().find(|(y, _)| y == x) {
                Some(slot) => slot.1 += m,
                None => poles.push((x.clone(), *m)),
            }
        }
        poles.sort_by(|a, b| a.0.cmp(&b.0));
        PoleReport { poles, residual: None }
    }
}

impl RationalFunction {
    /// Canonicalises `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        Self::with_monic_den(num, den)
    }

    /// Assumes coprime parts; only scales so that `den` is monic.
    fn with_monic_den(num: Poly, den: Poly) -> Self {
        let lead = den.lead();
        if lead.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lead.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    /// `(k + a) / (k + b)`
    pub fn linear_ratio(a: Rational, b: Rational) -> Self {
        Self::normalize(Poly::linear(a), Poly::linear(b))
    }

    /// `1 / (k + a)`
    pub fn simple_pole(a: Rational) -> Self {
        RationalFunction { num: Poly::one(), den: Poly::linear(a) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn arith(op: ArithOp, a: &Self, b: &Self) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => a + b,
            ArithOp::Sub => a - b,
            ArithOp::Mul => a * b,
            ArithOp::Div => a.checked_div(b)?,
        })
    }

    /// `k -> k + t`
    pub fn shift(&self, t: &Rational) -> Self {
        if t.is_zero() {
            return self.clone();
        }
        // shifting preserves coprimality and leading coefficients
        RationalFunction { num: self.num.shift(t), den: self.den.shift(t) }
    }

    /// `k -> a*k + b`, with `a != 0`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        assert!(!a.is_zero(), "degenerate affine substitution");
        Self::with_monic_den(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::EvalAtPole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Decides whether `self = lambda * other`.
    pub fn proportional(&self, other: &Self) -> Proportionality {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Proportionality::BothZero,
            (true, false) | (false, true) => Proportionality::NotProportional,
            (false, false) => {
                if self.den != other.den || self.num.degree() != other.num.degree() {
                    return Proportionality::NotProportional;
                }
                let lambda = self.num.lead() / other.num.lead();
                if self.num == other.num.scale(&lambda) {
                    Proportionality::Proportional(lambda)
                } else {
                    Proportionality::NotProportional
                }
            }
        }
    }

    pub fn poles(&self) -> PoleReport {
        let rep = rational_roots(&self.den);
        PoleReport { poles: rep.roots, residual: rep.residual }
    }

    /// Cheap sufficient test first: positive coefficients and `den(0) != 0`
    /// rule out roots in `[0, inf)`.
    pub fn first_nonnegative_integer_pole(&self) -> Option<Rational> {
        if self.den.all_coeffs_nonnegative() && !self.den.coeff(0).is_zero() {
            return None;
        }
        self.poles()
            .poles
            .into_iter()
            .map(|(x, _)| x)
            .find(super::rational::is_nonneg_integer)
    }

    /// Factored rendering such as `2(k+3)/((k+2)(k+4))`.
    pub fn fmt_in(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let lead = self.num.lead();
        let num_factors = factor_string(&self.num.monic(), var);
        let den_factors = factor_string(&self.den, var);
        let mut out = String::new();
        let mag = lead.abs();
        if lead.is_negative() {
            out.push('-');
        }
        match (&num_factors, mag.is_one()) {
            (None, _) => out.push_str(&to_short_string(&mag)),
            (Some(f), true) => out.push_str(&f.text),
            (Some(f), false) => {
                if mag.is_integer() {
                    out.push_str(&to_short_string(&mag));
                } else {
                    out.push_str(&format!("({})", to_short_string(&mag)));
                }
                out.push_str(&f.text);
            }
        }
        if let Some(d) = den_factors {
            out.push('/');
            if d.count > 1 {
                out.push_str(&format!("({})", d.text));
            } else {
                out.push_str(&d.text);
            }
        }
        out
    }
}

struct Factored {
    text: String,
    count: usize,
}

/// Linear factors of a monic polynomial, `None` if it is constant.
fn factor_string(p: &Poly, var: char) -> Option<Factored> {
    if p.is_constant() {
        return None;
    }
    let rep = rational_roots(p);
    let mut text = String::new();
    let mut count = 0;
    for (root, mult) in rep.roots.iter().rev() {
        let c = -root;
        let lin = if c.is_zero() {
            var.to_string()
        } else if c.is_negative() {
            format!("({var}-{})", to_short_string(&c.abs()))
        } else {
            format!("({var}+{})", to_short_string(&c))
        };
        text.push_str(&lin);
        if *mult > 1 {
            text.push_str(&format!("^{mult}"));
        }
        count += 1;
    }
    if let Some(res) = rep.residual {
        text.push_str(&format!("({})", res.fmt_in(var)));
        count += 1;
    }
    Some(Factored { text, count })
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({} / {})", self.num, self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_in('k'))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        // gcd(num, den) divides g = gcd(den_a, den_b)
        let g = poly_gcd(&self.den, &rhs.den);
        let a_cof = self.den.div_exact(&g);
        let b_cof = rhs.den.div_exact(&g);
        let num = &(&self.num * &b_cof) + &(&rhs.num * &a_cof);
        let den = &self.den * &b_cof;
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if g.is_constant() {
            return RationalFunction::with_monic_den(num, den);
        }
        let h = poly_gcd(&num, &g);
        if h.is_constant() {
            RationalFunction::with_monic_den(num, den)
        } else {
            RationalFunction::with_monic_den(num.div_exact(&h), den.div_exact(&h))
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel so the product is already reduced
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let (an, bd) = if g1.is_constant() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (bn, ad) = if g2.is_constant() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        RationalFunction::with_monic_den(&an * &bn, &ad * &bd)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl std::iter::Product for RationalFunction {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RationalFunction::one(), |acc, x| &acc * &x)
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| &acc + &x)
    }
}
