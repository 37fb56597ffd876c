//! Quasihomogeneous Toeplitz operators on the Bergman space of the unit disc,
//! handled as weighted shifts `z^k -> w(k) z^(k+p)` whose weights are exact
//! rational functions of the index `k`.
//!
//! The crate builds those operators from polynomial radial symbols through
//! their Mellin transforms, composes them, extracts roots, and decides when
//! sums of two such operators commute. A floating-point module provides an
//! independent quadrature and finite-matrix oracle.

pub mod error;
pub mod exact;
pub mod mellin;
pub mod numeric;
pub mod shift;
pub mod symbol;
pub mod theorem;

pub use error::{Error, Result};
