//! Browser bindings for the static demo page in `www/`.
//!
//! Every export returns a JSON string; failures come back as `{"error": "..."}`
//! so the page can show them inline.

use qh_toeplitz::exact::rational::{to_f64, to_ratio_string};
use qh_toeplitz::exact::{PoleReport, Proportionality, RationalFunction};
use qh_toeplitz::shift::QhOperator;
use qh_toeplitz::theorem::{build_prod_sides, pole_diff, verify_theorem1, CandidatePair, TheoremParams};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const CURVE_SAMPLES: usize = 101;

fn finish(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn weight_samples(w: &RationalFunction, k_max: u32) -> Vec<Value> {
    (0..=k_max)
        .map(|k| {
            let v = w.eval(&qh_toeplitz::exact::int(k.into()));
            match v {
                Ok(q) => json!({"k": k, "exact": to_ratio_string(&q), "value": to_f64(&q)}),
                Err(_) => json!({"k": k, "exact": null, "value": null}),
            }
        })
        .collect()
}

fn poles_json(r: &PoleReport) -> Value {
    json!(r.poles.iter().map(|(x, m)| json!({"at": to_f64(x), "exact": to_ratio_string(x), "multiplicity": m})).collect::<Vec<_>>())
}

pub fn root_explorer_value(p: u32, order: u32, k_max: u32) -> Result<Value, String> {
    let (op, sym) = QhOperator::root(p, order).map_err(|e| e.to_string())?;
    let curve: Vec<[f64; 2]> = (0..CURVE_SAMPLES)
        .map(|i| {
            let r = i as f64 / (CURVE_SAMPLES - 1) as f64;
            [r, sym.eval(r)]
        })
        .collect();
    Ok(json!({
        "weight": op.weight().to_string(),
        "symbol": sym.to_string(),
        "curve": curve,
        "weights": weight_samples(op.weight(), k_max),
    }))
}

pub fn verify_value(p: u32, s: u32, phi_order: u32, psi_order: u32, m_max: u32) -> Result<Value, String> {
    let params = TheoremParams::new(p, s, phi_order, psi_order).map_err(|e| e.to_string())?;
    let report = verify_theorem1(&params, m_max).map_err(|e| e.to_string())?;
    serde_json::to_value(report).map_err(|e| e.to_string())
}

pub fn sides_value(p: u32, s: u32, phi_order: u32, psi_order: u32, m: u32, k_max: u32) -> Result<Value, String> {
    let params = TheoremParams::new(p, s, phi_order, psi_order).map_err(|e| e.to_string())?;
    let cand = CandidatePair::new(&params, m).map_err(|e| e.to_string())?;
    let sides = build_prod_sides(&params, &cand);
    let diff = pole_diff(&sides.lhs, &sides.rhs);
    let (outcome, lambda) = match sides.lhs.proportional(&sides.rhs) {
        Proportionality::BothZero => ("BothZero", None),
        Proportionality::Proportional(q) => ("Proportional", Some(to_ratio_string(&q))),
        Proportionality::NotProportional => ("NotProportional", None),
    };
    Ok(json!({
        "m": cand.m,
        "l": cand.l,
        "lhs": sides.lhs.to_string(),
        "rhs": sides.rhs.to_string(),
        "outcome": outcome,
        "lambda": lambda,
        "lhs_samples": weight_samples(&sides.lhs, k_max),
        "rhs_samples": weight_samples(&sides.rhs, k_max),
        "poles": {
            "only_lhs": poles_json(&diff.only_lhs),
            "only_rhs": poles_json(&diff.only_rhs),
            "shared": poles_json(&diff.shared),
        },
    }))
}

/// Root operator of `T_{e^{ip theta} r^((2M+1)p)}`: weight, symbol curve on `[0, 1]`, weights `w(0..=k_max)`.
#[wasm_bindgen]
pub fn root_explorer(p: u32, order: u32, k_max: u32) -> String {
    finish(root_explorer_value(p, order, k_max))
}

/// Full verification report for one parameter tuple.
#[wasm_bindgen]
pub fn verify(p: u32, s: u32, phi_order: u32, psi_order: u32, m_max: u32) -> String {
    finish(verify_value(p, s, phi_order, psi_order, m_max))
}

/// Both sides of the identity for one `m`, sampled on `k = 0..=k_max`, with their pole sets.
#[wasm_bindgen]
pub fn sides(p: u32, s: u32, phi_order: u32, psi_order: u32, m: u32, k_max: u32) -> String {
    finish(sides_value(p, s, phi_order, psi_order, m, k_max))
}
