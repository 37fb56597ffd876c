//! Text and JSON views of the exact results.

use qh_toeplitz::exact::rational::{to_ratio_string, to_short_string};
use qh_toeplitz::exact::{PoleReport, Proportionality};
use qh_toeplitz::mellin::mellin_symbol;
use qh_toeplitz::shift::{GradedOperator, QhOperator};
use qh_toeplitz::symbol::RadialSymbol;
use qh_toeplitz::theorem::{
    build_prod_sides, pole_diff, prod_factors, CandidatePair, TheoremParams, VerificationReport,
};
use serde_json::{json, Value};

use crate::{emit, Format};

fn outcome_text(p: &Proportionality) -> String {
    match p {
        Proportionality::BothZero => "BothZero".into(),
        Proportionality::Proportional(q) => format!("Proportional(lambda = {})", to_short_string(q)),
        Proportionality::NotProportional => "NotProportional".into(),
    }
}

fn outcome_json(p: &Proportionality) -> Value {
    match p {
        Proportionality::Proportional(q) => {
            json!({"outcome": "Proportional", "lambda": to_ratio_string(q)})
        }
        other => json!({"outcome": outcome_text(other)}),
    }
}

fn poles_text(r: &PoleReport) -> String {
    let mut parts: Vec<String> = r
        .poles
        .iter()
        .map(|(x, m)| {
            if *m == 1 {
                to_short_string(x)
            } else {
                format!("{}^{m}", to_short_string(x))
            }
        })
        .collect();
    if let Some(res) = &r.residual {
        parts.push(format!("roots of {res}"));
    }
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

fn poles_json(r: &PoleReport) -> Value {
    json!({
        "poles": r.poles.iter().map(|(x, m)| json!({"at": to_ratio_string(x), "multiplicity": m})).collect::<Vec<_>>(),
        "residual": r.residual.as_ref().map(|p| p.to_string()),
    })
}

pub fn operator(fmt: Format, s: &RadialSymbol, op: &QhOperator, k_max: Option<u64>) -> String {
    let samples: Vec<(u64, String)> = k_max
        .map(|k_max| (0..=k_max).map(|k| (k, to_ratio_string(&op.apply(k).0))).collect())
        .unwrap_or_default();
    emit(
        fmt,
        || {
            let mut out = format!(
                "symbol: {s}\ndegree: {}\nweight: w(k) = {}",
                op.degree(),
                op.weight()
            );
            for (k, w) in &samples {
                out += &format!("\nw({k}) = {w}");
            }
            out
        },
        json!({
            "symbol": s.to_string(),
            "mellin": mellin_symbol(s).to_string(),
            "degree": op.degree(),
            "weight": op.weight().to_string(),
            "samples": samples.iter().map(|(k, w)| json!({"k": k, "w": w})).collect::<Vec<_>>(),
        }),
    )
}

pub fn root(fmt: Format, root: &QhOperator, sym: &RadialSymbol) -> String {
    let mellin = mellin_symbol(sym);
    emit(
        fmt,
        || format!("degree: {}\nweight: w(k) = {}\nsymbol: {sym}\nmellin: {mellin}", root.degree(), root.weight()),
        json!({
            "degree": root.degree(),
            "weight": root.weight().to_string(),
            "symbol": sym.to_string(),
            "mellin": mellin.to_string(),
        }),
    )
}

pub fn graded(fmt: Format, g: &GradedOperator) -> String {
    let comps: Vec<QhOperator> = g.components().collect();
    emit(
        fmt,
        || {
            if comps.is_empty() {
                return "0".into();
            }
            comps
                .iter()
                .map(|c| format!("degree {}: {}", c.degree(), c.weight()))
                .collect::<Vec<_>>()
                .join("\n")
        },
        json!({
            "zero": comps.is_empty(),
            "components": comps.iter().map(|c| json!({"degree": c.degree(), "weight": c.weight().to_string()})).collect::<Vec<_>>(),
        }),
    )
}

pub fn check(fmt: Format, params: &TheoremParams, cand: &CandidatePair) -> String {
    let factors = prod_factors(params, cand);
    let sides = build_prod_sides(params, cand);
    let outcome = sides.lhs.proportional(&sides.rhs);
    let diff = pole_diff(&sides.lhs, &sides.rhs);
    emit(
        fmt,
        || {
            let mut out = format!("{params} m={} l={}\n", cand.m, cand.l);
            for (i, (r, p)) in factors.r.iter().zip(&factors.p).enumerate() {
                out += &format!("R{} = {r}\nP{} = {p}\n", i + 1, i + 1);
            }
            out += &format!("LHS = {}\nRHS = {}\n", sides.lhs, sides.rhs);
            out += &format!("outcome: {}\n", outcome_text(&outcome));
            out += &format!(
                "poles only in LHS: {}\npoles only in RHS: {}\nshared poles: {}",
                poles_text(&diff.only_lhs),
                poles_text(&diff.only_rhs),
                poles_text(&diff.shared)
            );
            out
        },
        {
            let mut v = json!({
                "params": params,
                "m": cand.m,
                "l": cand.l,
                "R": factors.r.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "P": factors.p.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "lhs": sides.lhs.to_string(),
                "rhs": sides.rhs.to_string(),
                "pole_diff": {
                    "only_lhs": poles_json(&diff.only_lhs),
                    "only_rhs": poles_json(&diff.only_rhs),
                    "shared": poles_json(&diff.shared),
                    "certifies_mismatch": diff.certifies_mismatch(),
                },
            });
            let o = outcome_json(&outcome);
            for (k, val) in o.as_object().unwrap() {
                v[k] = val.clone();
            }
            v
        },
    )
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut out = format!("{}\nprecondition [T_phi, T_psi] != 0: {}\n", r.params, r.precondition_ok);
    out += &format!("{:>4} {:>4}  outcome\n", "m", "l");
    for row in &r.rows {
        out += &format!("{:>4} {:>4}  {}\n", row.m, row.l, outcome_text(&row.outcome));
    }
    out += "conclusion: ";
    out += &match serde_json::to_value(&r.conclusion).unwrap() {
        Value::Object(o) => {
            let status = o["status"].as_str().unwrap_or_default().to_owned();
            let rest: Vec<String> = o
                .iter()
                .filter(|(k, _)| *k != "status")
                .map(|(k, v)| format!("{k}={}", v.as_str().map_or_else(|| v.to_string(), str::to_owned)))
                .collect();
            if rest.is_empty() {
                status
            } else {
                format!("{status} ({})", rest.join(", "))
            }
        }
        other => other.to_string(),
    };
    out
}
