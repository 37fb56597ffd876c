//! Floating-point cross-checks for the exact engine.

mod matrix;
mod quad;

pub use matrix::{numeric_commutator_check, truncated_matrix, CommutatorCheck, TruncatedMatrix};
pub use quad::{gauss_legendre, quad_mellin, NumericSymbol, MAX_DEPTH};
