use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("evaluation at a pole: k = {0}")]
    EvalAtPole(Rational),
    #[error("unsupported Mellin transform: {0}")]
    UnsupportedMellin(String),
    #[error("weight has a pole at the nonnegative index k = {0}")]
    PoleAtNonnegativeIndex(Rational),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("symbol is not of the form r^((2M+1)p): {0}")]
    NoRoot(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("quadrature did not converge within depth {0}")]
    NoConvergence(u32),
    #[error("truncation order {k} must exceed total degree {degree}")]
    TruncationTooSmall { k: usize, degree: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
