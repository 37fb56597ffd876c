use crate::error::{Error, Result};
use crate::shift::GradedOperator;

/// Finite `K x K` section of an operator in the monomial basis, row-major.
///
/// Column `k` holds the image of `z^k`; entries whose index would reach
/// `K` or beyond are cut off.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedMatrix {
    dim: usize,
    entries: Vec<f64>,
    /// Columns whose whole image fits inside the section.
    pub valid_columns: usize,
}

impl TruncatedMatrix {
    pub fn zeros(dim: usize) -> Self {
        TruncatedMatrix { dim, entries: vec![0.0; dim * dim], valid_columns: dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, v: f64) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.dim)
    }

    pub fn mul(&self, other: &TruncatedMatrix) -> TruncatedMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = TruncatedMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out.valid_columns = self.valid_columns.min(other.valid_columns);
        out
    }

    pub fn sub(&self, other: &TruncatedMatrix) -> TruncatedMatrix {
        assert_eq!(self.dim, other.dim);
        TruncatedMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
            valid_columns: self.valid_columns.min(other.valid_columns),
        }
    }
}

/// `entries[k + d][k] = w_d(k)` for every component degree `d` and `k + d < K`.
pub fn truncated_matrix(op: &GradedOperator, k: usize) -> TruncatedMatrix {
    let mut m = TruncatedMatrix::zeros(k);
    for comp in op.components() {
        let d = comp.degree() as usize;
        for col in 0..k.saturating_sub(d) {
            let (c, _) = comp.apply(col as u64);
            m.set(col + d, col, crate::exact::rational::to_f64(&c));
        }
    }
    m.valid_columns = k.saturating_sub(op.max_degree().unwrap_or(0) as usize);
    m
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorCheck {
    pub max_abs_deviation: f64,
    pub pass: bool,
    pub valid_columns: usize,
}

/// Compares the section of the exact graded commutator with the commutator of
/// the sections, on the columns `k < K - (deg X + deg Y)` that truncation
/// leaves intact.
pub fn numeric_commutator_check(
    x: &GradedOperator,
    y: &GradedOperator,
    k: usize,
    tol: f64,
) -> Result<CommutatorCheck> {
    let degree = x.max_degree().unwrap_or(0) + y.max_degree().unwrap_or(0);
    if k <= degree as usize {
        return Err(Error::TruncationTooSmall { k, degree });
    }
    let (mx, my) = (truncated_matrix(x, k), truncated_matrix(y, k));
    let finite = mx.mul(&my).sub(&my.mul(&mx));
    let exact = truncated_matrix(&GradedOperator::commutator(x, y), k);
    let valid_columns = k - degree as usize;
    let mut max_abs_deviation: f64 = 0.0;
    for row in 0..k {
        for col in 0..valid_columns {
            max_abs_deviation = max_abs_deviation.max((finite.get(row, col) - exact.get(row, col)).abs());
        }
    }
    Ok(CommutatorCheck { max_abs_deviation, pass: max_abs_deviation <= tol, valid_columns })
}
