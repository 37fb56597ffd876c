//! Rational roots of polynomials with multiplicity.
//!
//! The polynomial is split into square-free parts (Yun). For each part, with
//! primitive integer form `h` and leading coefficient `L`, every rational root
//! has the shape `n/L`. When the root bound makes it cheap, all candidates
//! `n/L` are scanned with a two-prime modular filter and confirmed exactly.
//! Otherwise real roots are isolated by Sturm bisection down to intervals
//! shorter than `1/L`, each of which holds at most one candidate.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{poly_gcd, Poly};
use super::rational::{int, log2_abs, Rational};

/// Largest candidate range scanned directly before falling back to Sturm isolation.
const SCAN_LIMIT: f64 = (1u64 << 20) as f64;

const PRIMES: [u64; 2] = [0xffff_ffff_ffff_ffc5, 0x7fff_ffff_ffff_ffe7];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    /// Distinct rational roots ascending, with multiplicity.
    pub roots: Vec<(Rational, u32)>,
    /// Monic product of the factors without rational roots; `None` if trivial.
    pub residual: Option<Poly>,
}

/// Yun's square-free decomposition of a nonzero polynomial: returns
/// `(a_i, i)` with `monic(f) = prod a_i^i`, skipping constant factors.
pub fn square_free_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df);
    let mut b = f.div_exact(&a0);
    let mut c = df.div_exact(&a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        b = b.div_exact(&a);
        c = d.div_exact(&a);
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

pub fn rational_roots(f: &Poly) -> RootReport {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut roots: Vec<(Rational, u32)> = Vec::new();
    let mut residual = Poly::one();
    for (part, mult) in square_free_decomposition(f) {
        let (found, rest) = square_free_rational_roots(&part);
        roots.extend(found.into_iter().map(|r| (r, mult)));
        if !rest.is_constant() {
            residual = &residual * &rest.pow(mult);
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    RootReport {
        roots,
        residual: (!residual.is_constant()).then(|| residual.monic()),
    }
}

/// Roots of a square-free polynomial plus the monic cofactor left after
/// removing them.
fn square_free_rational_roots(f: &Poly) -> (Vec<Rational>, Poly) {
    let f = f.monic();
    if f.degree() == Some(1) {
        return (vec![-f.coeff(0)], Poly::one());
    }
    let h = f.primitive_integer();
    let lead = h.last().unwrap().clone();
    let candidates = match scan_size(&h) {
        Some(bound) => scan_candidates(&h, &lead, bound),
        None => sturm_candidates(&f, &lead),
    };
    let mut rest = f;
    let mut found = Vec::new();
    for r in candidates {
        let (q, rem) = rest.deflate(&r);
        if rem.is_zero() {
            rest = q;
            found.push(r);
        }
    }
    (found, rest.monic())
}

/// Fujiwara bound on |L * root| for the integer polynomial `h`, or `None` when
/// scanning that range would be too expensive.
fn scan_size(h: &[BigInt]) -> Option<u64> {
    let d = h.len() - 1;
    let lead_log = log2_abs(&h[d]);
    let mut best = f64::NEG_INFINITY;
    for i in 1..=d {
        let c = &h[d - i];
        if c.is_zero() {
            continue;
        }
        let mut term = (log2_abs(c) - lead_log) / i as f64;
        if i == d {
            term -= 1.0 / d as f64;
        }
        best = best.max(term);
    }
    // |root| <= 2 * 2^best, and candidates are n / L
    let log_range = 1.0 + best + lead_log;
    let range = if best.is_finite() { log_range.exp2() * 1.001 + 2.0 } else { 2.0 };
    (range < SCAN_LIMIT).then(|| range.ceil() as u64)
}

fn to_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Scans n in [-bound, bound] for zeros of `sum h_i n^i L^(d-i)`, which is
/// `L^d h(n/L)`, modulo two primes; survivors are returned as `n/L`.
fn scan_candidates(h: &[BigInt], lead: &BigInt, bound: u64) -> Vec<Rational> {
    let d = h.len() - 1;
    let tables: Vec<(u64, Vec<u64>)> = PRIMES
        .iter()
        .map(|&p| {
            let lm = to_mod(lead, p);
            // coefficient i times L^(d-i)
            let mut pw = 1u64;
            let mut scaled = vec![0u64; d + 1];
            for i in (0..=d).rev() {
                scaled[i] = mulmod(to_mod(&h[i], p), pw, p);
                pw = mulmod(pw, lm, p);
            }
            (p, scaled)
        })
        .collect();
    let bound = bound as i64;
    let mut out = Vec::new();
    for n in -bound..=bound {
        let hit = tables.iter().all(|(p, scaled)| {
            let p = *p;
            let x = if n < 0 { p - ((-n) as u64 % p) } else { n as u64 % p };
            let mut acc = 0u64;
            for c in scaled.iter().rev() {
                acc = mulmod(acc, x, p);
                acc = ((acc as u128 + *c as u128) % p as u128) as u64;
            }
            acc == 0
        });
        if hit {
            out.push(Rational::new(BigInt::from(n), lead.clone()));
        }
    }
    out
}

fn sturm_sequence(f: &Poly) -> Vec<Poly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Isolates real roots of square-free `f` in half-open intervals (a, b] of
/// width below 1/L and returns the unique `n/L` point of each interval.
fn sturm_candidates(f: &Poly, lead: &BigInt) -> Vec<Rational> {
    let seq = sturm_sequence(f);
    let lead_q = f.lead();
    let bound = f
        .coeffs()
        .iter()
        .map(|c| (c / &lead_q).abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + Rational::one();
    let width_limit = Rational::new(BigInt::one(), lead.clone());
    let mut out = Vec::new();
    let lo = -bound.clone();
    let mut stack = vec![(lo.clone(), bound.clone(), sign_changes(&seq, &lo), sign_changes(&seq, &bound))];
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va.saturating_sub(vb);
        if count == 0 {
            continue;
        }
        if &b - &a < width_limit {
            // the only multiple of 1/L in (a, b]
            let n = (&b * Rational::from_integer(lead.clone())).floor();
            let x = n / Rational::from_integer(lead.clone());
            if x > a {
                out.push(x);
            }
            continue;
        }
        let mid = (&a + &b) / int(2);
        let vm = sign_changes(&seq, &mid);
        stack.push((a, mid.clone(), va, vm));
        stack.push((mid, b, vm, vb));
    }
    out.sort();
    out
}
