use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::symbol::RadialSymbol;

/// Bisection depth allowed below the initial graded panels.
pub const MAX_DEPTH: u32 = 200;

/// Share of the tolerance handed to the child touching `r = 0`, where
/// integrands like `r^(-1/2)` shrink only by `sqrt(2)` per bisection.
const ANCHORED_SHARE: f64 = 0.9;

/// Initial panels are `[0, 2^-GRADING], ..., [1/4, 1/2], [1/2, 1]`.
const GRADING: i32 = 24;

const ORDER: usize = 10;

/// Bounded radial function on `[0, 1]`, supplied by the caller.
#[derive(Clone)]
pub struct NumericSymbol {
    evaluator: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    description: String,
}

impl NumericSymbol {
    pub fn new(description: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        NumericSymbol { evaluator: Arc::new(f), description: description.into() }
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.evaluator)(r)
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl From<&RadialSymbol> for NumericSymbol {
    fn from(s: &RadialSymbol) -> Self {
        let owned = s.clone();
        NumericSymbol::new(s.to_string(), move |r| owned.eval(r))
    }
}

impl fmt::Debug for NumericSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericSymbol({})", self.description)
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(ORDER))
}

fn panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    half * rule().iter().map(|(x, w)| w * f(mid + half * x)).sum::<f64>()
}

fn adapt(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (left, right) = (panel(f, a, m), panel(f, m, b));
    if (left + right - whole).abs() <= tol {
        return Ok(left + right);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::NoConvergence(MAX_DEPTH));
    }
    let left_share = if a == 0.0 { ANCHORED_SHARE } else { 0.5 };
    Ok(adapt(f, a, m, left, left_share * tol, depth + 1)?
        + adapt(f, m, b, right, (1.0 - left_share) * tol, depth + 1)?)
}

/// `int_0^1 s(r) r^(z-1) dr` to absolute tolerance `tol`.
pub fn quad_mellin(s: &NumericSymbol, z: f64, tol: f64) -> Result<f64> {
    if z.is_nan() || tol.is_nan() || z <= 0.0 || tol <= 0.0 {
        return Err(Error::InvalidParams(format!("need z > 0 and tol > 0, got z={z}, tol={tol}")));
    }
    let f = |r: f64| if r == 0.0 { 0.0 } else { s.eval(r) * r.powf(z - 1.0) };
    let mut edges = vec![0.0];
    edges.extend((0..=GRADING).rev().map(|e| 2f64.powi(-e)));
    let share = tol / (edges.len() - 1) as f64;
    let mut total = 0.0;
    for w in edges.windows(2) {
        let whole = panel(&f, w[0], w[1]);
        total += adapt(&f, w[0], w[1], whole, share, 0)?;
    }
    Ok(total)
}
