//! Exact arithmetic: rationals, polynomials, rational functions and their poles.

pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod roots;

pub use poly::{poly_gcd, Poly};
pub use ratfunc::{ArithOp, PoleReport, Proportionality, RationalFunction};
pub use rational::{frac, int, parse_rational, Rational};
pub use roots::{rational_roots, RootReport};
