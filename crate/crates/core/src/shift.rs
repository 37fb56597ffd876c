//! Quasihomogeneous Toeplitz operators as weighted shifts on monomials.
//!
//! `T_{e^{ip theta} phi}` sends `z^k` to `2(k+p+1) M(phi)(2k+p+2) z^(k+p)`,
//! so it is fully described by its degree `p` and the weight
//! `w(k) = 2(k+p+1) M(phi)(2k+p+2)`. Products and commutators of such
//! operators are again weighted shifts, and sums are kept graded by degree.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, Poly, Rational, RationalFunction};
use crate::mellin::{mellin_symbol, root_mellin, symbol_from_mellin};
use crate::symbol::RadialSymbol;

/// `z^k -> weight(k) z^(k + degree)` for every `k >= 0`. The weight never has
/// a pole at a nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QhOperator {
    degree: u32,
    weight: RationalFunction,
}

impl QhOperator {
    pub fn new(degree: u32, weight: RationalFunction) -> Result<Self> {
        if let Some(x) = weight.first_nonnegative_integer_pole() {
            return Err(Error::PoleAtNonnegativeIndex(x));
        }
        Ok(QhOperator { degree, weight })
    }

    /// Only for weights derived from already valid operators, whose poles
    /// can only move further left.
    fn derived(degree: u32, weight: RationalFunction) -> Self {
        debug_assert!(weight.first_nonnegative_integer_pole().is_none());
        QhOperator { degree, weight }
    }

    pub fn identity() -> Self {
        QhOperator { degree: 0, weight: RationalFunction::one() }
    }

    /// Toeplitz operator with symbol `e^{i p theta} s(r)`.
    pub fn from_symbol(p: u32, s: &RadialSymbol) -> Self {
        let p_q = int(p as i64);
        let mellin = mellin_symbol(s).into_rf();
        let at = mellin.compose_affine(&int(2), &(&p_q + int(2)));
        let factor = RationalFunction::from_poly(Poly::affine(int(2), int(2) * (&p_q + int(1))));
        // Mellin poles sit at z <= 0, i.e. k <= -(p+2)/2
        Self::derived(p, &factor * &at)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn weight(&self) -> &RationalFunction {
        &self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.weight.is_zero()
    }

    /// Image of `z^k`: `(coefficient, k + degree)`.
    pub fn apply(&self, k: u64) -> (Rational, u64) {
        let c = self
            .weight
            .eval(&Rational::from_integer(k.into()))
            .expect("weights have no poles at nonnegative integers");
        (c, k + self.degree as u64)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::derived(self.degree, self.weight.scale(c))
    }

    /// `self ∘ other`, with `other` applied first.
    pub fn compose(&self, other: &QhOperator) -> QhOperator {
        let w = &self.weight.shift(&int(other.degree as i64)) * &other.weight;
        Self::derived(self.degree + other.degree, w)
    }

    pub fn power(&self, n: u32) -> QhOperator {
        (0..n).fold(QhOperator::identity(), |acc, _| acc.compose(self))
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(a: &QhOperator, b: &QhOperator) -> QhOperator {
        let ab = &a.weight.shift(&int(b.degree as i64)) * &b.weight;
        let ba = &b.weight.shift(&int(a.degree as i64)) * &a.weight;
        Self::derived(a.degree + b.degree, &ab - &ba)
    }

    /// Degree-one root of `T_{e^{ip theta} r^((2M+1)p)}` and its radial symbol.
    ///
    /// The weight is `2(k+2) * R(2k+2)` where `R` is [`root_mellin`], and the
    /// symbol is the partial-fraction inverse of `R` divided by `r`.
    pub fn root(p: u32, order: u32) -> Result<(QhOperator, RadialSymbol)> {
        let rm = root_mellin(p, order)?;
        let at = rm.as_rf().compose_affine(&int(2), &int(2));
        let weight = &RationalFunction::from_poly(Poly::affine(int(2), int(4))) * &at;
        let symbol = symbol_from_mellin(&rm)?.shift_exponents(&-Rational::one())?;
        Ok((QhOperator::new(1, weight)?, symbol))
    }

    /// Root of `T_{e^{ip theta} s}` for `s` exactly `r^((2M+1)p)` with `M >= 1`.
    pub fn root_of_symbol(p: u32, s: &RadialSymbol) -> Result<(QhOperator, RadialSymbol)> {
        let reject = || Error::NoRoot(format!("p = {p}, symbol {s}"));
        if p == 0 {
            return Err(reject());
        }
        let [(c, a)] = s.terms() else {
            return Err(reject());
        };
        if !c.is_one() || !a.is_integer() {
            return Err(reject());
        }
        // a = (2M+1) p with M >= 1
        let a: u64 = a.to_integer().try_into().map_err(|_| reject())?;
        let p64 = p as u64;
        if !a.is_multiple_of(p64) || (a / p64).is_multiple_of(2) || a / p64 < 3 {
            return Err(reject());
        }
        let order = u32::try_from((a / p64 - 1) / 2).map_err(|_| reject())?;
        Self::root(p, order)
    }
}

/// Finite sum of weighted shifts keyed by degree, without zero components.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedOperator {
    components: BTreeMap<u32, RationalFunction>,
}

impl GradedOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_ops<'a>(ops: impl IntoIterator<Item = &'a QhOperator>) -> Self {
        ops.into_iter().fold(Self::zero(), |acc, op| acc.add_component(op.degree, &op.weight))
    }

    fn add_component(mut self, degree: u32, weight: &RationalFunction) -> Self {
        let sum = match self.components.remove(&degree) {
            Some(w) => &w + weight,
            None => weight.clone(),
        };
        if !sum.is_zero() {
            self.components.insert(degree, sum);
        }
        self
    }

    pub fn components(&self) -> impl Iterator<Item = QhOperator> + '_ {
        self.components
            .iter()
            .map(|(&d, w)| QhOperator::derived(d, w.clone()))
    }

    pub fn component(&self, degree: u32) -> Option<&RationalFunction> {
        self.components.get(&degree)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.components.keys().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.components.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &GradedOperator) -> GradedOperator {
        other
            .components
            .iter()
            .fold(self.clone(), |acc, (&d, w)| acc.add_component(d, w))
    }

    pub fn scale(&self, c: &Rational) -> GradedOperator {
        if c.is_zero() {
            return Self::zero();
        }
        GradedOperator {
            components: self.components.iter().map(|(&d, w)| (d, w.scale(c))).collect(),
        }
    }

    /// `self ∘ other`, collected by total degree.
    pub fn compose(&self, other: &GradedOperator) -> GradedOperator {
        let mut out = GradedOperator::zero();
        for a in self.components() {
            for b in other.components() {
                let c = a.compose(&b);
                out = out.add_component(c.degree, &c.weight);
            }
        }
        out
    }

    /// Commutator of sums: the pairwise commutators accumulated by total degree.
    pub fn commutator(x: &GradedOperator, y: &GradedOperator) -> GradedOperator {
        let mut out = GradedOperator::zero();
        for a in x.components() {
            for b in y.components() {
                let c = QhOperator::commutator(&a, &b);
                out = out.add_component(c.degree, &c.weight);
            }
        }
        out
    }

    /// Image of `z^k` as `(index, coefficient)` pairs in ascending index.
    pub fn apply(&self, k: u64) -> Vec<(u64, Rational)> {
        self.components()
            .map(|op| {
                let (c, i) = op.apply(k);
                (i, c)
            })
            .collect()
    }
}

impl From<QhOperator> for GradedOperator {
    fn from(op: QhOperator) -> Self {
        GradedOperator::zero().add_component(op.degree, &op.weight)
    }
}
