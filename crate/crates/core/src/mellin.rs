//! Exact Mellin transforms `M(f)(z) = int_0^1 f(r) r^(z-1) dr` of radial symbols.
//!
//! A monomial `r^a` maps to `1/(z+a)`, so symbols map to sums of simple poles
//! and the inverse direction is a partial-fraction decomposition.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, Poly, Rational, RationalFunction};
use crate::symbol::RadialSymbol;

/// A rational function of the Mellin variable `z` with no pole in `Re z > 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MellinFn(RationalFunction);

impl MellinFn {
    /// Rejects functions with a rational pole at a positive location.
    pub fn new(f: RationalFunction) -> Result<Self> {
        let poles = f.poles();
        if let Some((x, _)) = poles.poles.iter().find(|(x, _)| x.is_positive()) {
            return Err(Error::UnsupportedMellin(format!(
                "pole at z = {x} in the right half-plane"
            )));
        }
        Ok(MellinFn(f))
    }

    pub fn as_rf(&self) -> &RationalFunction {
        &self.0
    }

    pub fn into_rf(self) -> RationalFunction {
        self.0
    }

    pub fn eval(&self, z: &Rational) -> Result<Rational> {
        self.0.eval(z)
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.0.eval_f64(z)
    }
}

impl fmt::Display for MellinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.fmt_in('z'))
    }
}

impl fmt::Debug for MellinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MellinFn({self})")
    }
}

pub fn mellin_symbol(s: &RadialSymbol) -> MellinFn {
    let f = s
        .terms()
        .iter()
        .map(|(c, a)| RationalFunction::simple_pole(a.clone()).scale(c))
        .sum();
    MellinFn(f)
}

/// Mellin transform of `r * root_symbol` for the degree-one root of the
/// operator with symbol `e^{i p theta} r^((2M+1)p)`:
///
/// `prod_{j=0}^{M-1} (z + 2jp + 2p) / prod_{j=0}^{M} (z + 2jp + 2)`.
pub fn root_mellin(p: u32, order: u32) -> Result<MellinFn> {
    if p == 0 || order == 0 {
        return Err(Error::InvalidParams(format!(
            "root Mellin formula needs p >= 1 and M >= 1, got p={p}, M={order}"
        )));
    }
    let p = p as i64;
    let num = (0..order as i64).fold(Poly::one(), |acc, j| {
        &acc * &Poly::linear(int(2 * j * p + 2 * p))
    });
    let den = (0..=order as i64).fold(Poly::one(), |acc, j| {
        &acc * &Poly::linear(int(2 * j * p + 2))
    });
    Ok(MellinFn(RationalFunction::new(num, den)?))
}

/// Partial-fraction inverse of [`mellin_symbol`]. Only proper functions with
/// simple rational poles at `z <= 0` are accepted.
pub fn symbol_from_mellin(f: &MellinFn) -> Result<RadialSymbol> {
    let rf = f.as_rf();
    if rf.is_zero() {
        return Ok(RadialSymbol::zero());
    }
    let (num, den) = (rf.num(), rf.den());
    if num.degree() >= den.degree() {
        return Err(Error::UnsupportedMellin(
            "numerator degree must be below denominator degree".into(),
        ));
    }
    let poles = rf.poles();
    if poles.residual.is_some() {
        return Err(Error::UnsupportedMellin("denominator has a nonlinear factor".into()));
    }
    if let Some((x, m)) = poles.poles.iter().find(|(_, m)| *m > 1) {
        return Err(Error::UnsupportedMellin(format!("pole of order {m} at z = {x}")));
    }
    let dden = den.derivative();
    let mut terms = Vec::with_capacity(poles.poles.len());
    for (x, _) in &poles.poles {
        if x.is_positive() {
            return Err(Error::UnsupportedMellin(format!("pole at z = {x} has negative exponent")));
        }
        // residue of num/den at a simple pole
        let residue = num.eval(x) / dden.eval(x);
        if !residue.is_zero() {
            terms.push((residue, -x));
        }
    }
    RadialSymbol::from_terms(terms)
}
