//! Commutation of sums of two quasihomogeneous Toeplitz operators.
//!
//! Fix `T_phi = T_{e^{ip theta} r^((2M+1)p)}` and
//! `T_psi = T_{e^{is theta} r^((2N+1)s)}` with `1 <= p < s`, and write
//! `A`, `B` for their degree-one roots. A sum `c1 A^m + c2 B^l` with
//! `m < l` and `l + p = m + s` commutes with `T_phi + T_psi` exactly when
//!
//! ```text
//! c1 [A^m, T_psi] = c2 [T_phi, B^l]      (as weights, for all k >= 0)
//! ```
//!
//! Both sides are rational functions of `k`. This module builds them from
//! closed-form factors, decides proportionality, and sweeps `m` to confirm
//! that only `(m, l) = (p, s)` with `c1 = c2` survives.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{parse_rational, to_ratio_string};
use crate::exact::{int, PoleReport, Proportionality, Rational, RationalFunction};
use crate::shift::QhOperator;
use crate::symbol::RadialSymbol;

/// `phi(r) = r^((2M+1)p)`, `psi(r) = r^((2N+1)s)` with `1 <= p < s`, `M, N >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TheoremParams {
    pub p: u32,
    pub s: u32,
    #[serde(rename = "M")]
    pub phi_order: u32,
    #[serde(rename = "N")]
    pub psi_order: u32,
}

impl TheoremParams {
    pub fn new(p: u32, s: u32, phi_order: u32, psi_order: u32) -> Result<Self> {
        let params = TheoremParams { p, s, phi_order, psi_order };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 1 || self.p >= self.s {
            return Err(Error::InvalidParams(format!(
                "need 1 <= p < s, got p={}, s={}",
                self.p, self.s
            )));
        }
        if self.phi_order < 1 || self.psi_order < 1 {
            return Err(Error::InvalidParams(format!(
                "need M, N >= 1, got M={}, N={}",
                self.phi_order, self.psi_order
            )));
        }
        Ok(())
    }

    pub fn phi(&self) -> RadialSymbol {
        RadialSymbol::power(((2 * self.phi_order + 1) * self.p) as u64)
    }

    pub fn psi(&self) -> RadialSymbol {
        RadialSymbol::power(((2 * self.psi_order + 1) * self.s) as u64)
    }
}

impl fmt::Display for TheoremParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} s={} M={} N={}", self.p, self.s, self.phi_order, self.psi_order)
    }
}

/// `1 <= m < l` with `l = m + s - p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidatePair {
    pub m: u32,
    pub l: u32,
}

impl CandidatePair {
    pub fn new(params: &TheoremParams, m: u32) -> Result<Self> {
        params.validate()?;
        if m < 1 {
            return Err(Error::InvalidParams("need m >= 1".into()));
        }
        Ok(CandidatePair { m, l: m + params.s - params.p })
    }
}

/// The eight factors of the identity, each a product of linear ratios.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProdFactors {
    /// `R1..R4`
    pub r: [RationalFunction; 4],
    /// `P1..P4`
    pub p: [RationalFunction; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProdSides {
    /// `R1 P1 - R2 P2`
    pub lhs: RationalFunction,
    /// `R3 P3 - R4 P4`
    pub rhs: RationalFunction,
}

fn ratio(a: i64, b: i64) -> RationalFunction {
    RationalFunction::linear_ratio(int(a), int(b))
}

fn product(range: std::ops::RangeInclusive<i64>, f: impl Fn(i64) -> RationalFunction) -> RationalFunction {
    range.map(f).product()
}

pub fn prod_factors(params: &TheoremParams, cand: &CandidatePair) -> ProdFactors {
    let (p, s) = (params.p as i64, params.s as i64);
    let (big_m, big_n) = (params.phi_order as i64, params.psi_order as i64);
    let (m, l) = (cand.m as i64, cand.l as i64);
    ProdFactors {
        r: [
            ratio(s + 1, (big_n + 1) * s + 1),
            ratio(m + s + 1, m + (big_n + 1) * s + 1),
            ratio(l + p + 1, l + (big_m + 1) * p + 1),
            ratio(p + 1, (big_m + 1) * p + 1),
        ],
        p: [
            product(1..=big_m, |j| ratio(s + j * p + 1, s + m + j * p + 1)),
            product(1..=big_m, |j| ratio(j * p + 1, m + j * p + 1)),
            product(1..=big_n, |j| ratio(j * s + 1, l + j * s + 1)),
            product(1..=big_n, |j| ratio(p + j * s + 1, l + p + j * s + 1)),
        ],
    }
}

/// Both sides from the closed-form factors.
pub fn build_prod_sides(params: &TheoremParams, cand: &CandidatePair) -> ProdSides {
    let ProdFactors { r, p } = prod_factors(params, cand);
    ProdSides {
        lhs: &(&r[0] * &p[0]) - &(&r[1] * &p[1]),
        rhs: &(&r[2] * &p[2]) - &(&r[3] * &p[3]),
    }
}

/// Both sides from the operator algebra: `[A^m, T_psi]` and `[T_phi, B^l]`.
pub fn commutator_sides(params: &TheoremParams, cand: &CandidatePair) -> Result<ProdSides> {
    let (root_phi, _) = QhOperator::root(params.p, params.phi_order)?;
    let (root_psi, _) = QhOperator::root(params.s, params.psi_order)?;
    let t_phi = QhOperator::from_symbol(params.p, &params.phi());
    let t_psi = QhOperator::from_symbol(params.s, &params.psi());
    let lhs = QhOperator::commutator(&root_phi.power(cand.m), &t_psi);
    let rhs = QhOperator::commutator(&t_phi, &root_psi.power(cand.l));
    Ok(ProdSides { lhs: lhs.weight().clone(), rhs: rhs.weight().clone() })
}

/// `Proportional(lambda)` means `lhs = lambda * rhs`, i.e. `lambda = c2 / c1`.
pub fn check_instance(params: &TheoremParams, cand: &CandidatePair) -> Proportionality {
    let sides = build_prod_sides(params, cand);
    sides.lhs.proportional(&sides.rhs)
}

/// `[T_phi, T_psi] != 0`.
pub fn precondition_holds(params: &TheoremParams) -> bool {
    let t_phi = QhOperator::from_symbol(params.p, &params.phi());
    let t_psi = QhOperator::from_symbol(params.s, &params.psi());
    !QhOperator::commutator(&t_phi, &t_psi).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleDiff {
    pub only_lhs: PoleReport,
    pub only_rhs: PoleReport,
    pub shared: PoleReport,
}

impl PoleDiff {
    /// One-sided poles rule out proportionality of nonzero sides.
    pub fn certifies_mismatch(&self) -> bool {
        !self.only_lhs.is_empty() || !self.only_rhs.is_empty()
    }
}

/// Multiset difference and intersection of the reduced poles of both sides.
pub fn pole_diff(lhs: &RationalFunction, rhs: &RationalFunction) -> PoleDiff {
    let (a, b) = (lhs.poles(), rhs.poles());
    let mut only_lhs = Vec::new();
    let mut only_rhs = Vec::new();
    let mut shared = Vec::new();
    for (x, ma) in &a.poles {
        let mb = b.multiplicity(x);
        if mb > 0 {
            shared.push((x.clone(), (*ma).min(mb)));
        }
        if *ma > mb {
            only_lhs.push((x.clone(), ma - mb));
        }
    }
    for (x, mb) in &b.poles {
        let ma = a.multiplicity(x);
        if *mb > ma {
            only_rhs.push((x.clone(), mb - ma));
        }
    }
    PoleDiff {
        only_lhs: PoleReport { poles: only_lhs, residual: a.residual },
        only_rhs: PoleReport { poles: only_rhs, residual: b.residual },
        shared: PoleReport { poles: shared, residual: None },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RowRepr", into = "RowRepr")]
pub struct ReportRow {
    pub m: u32,
    pub l: u32,
    pub outcome: Proportionality,
}

#[derive(Serialize, Deserialize)]
struct RowRepr {
    m: u32,
    l: u32,
    outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
}

impl From<ReportRow> for RowRepr {
    fn from(row: ReportRow) -> Self {
        let (outcome, lambda) = match &row.outcome {
            Proportionality::BothZero => ("BothZero", None),
            Proportionality::Proportional(q) => ("Proportional", Some(to_ratio_string(q))),
            Proportionality::NotProportional => ("NotProportional", None),
        };
        RowRepr { m: row.m, l: row.l, outcome: outcome.into(), lambda }
    }
}

impl TryFrom<RowRepr> for ReportRow {
    type Error = String;

    fn try_from(r: RowRepr) -> std::result::Result<Self, String> {
        let outcome = match (r.outcome.as_str(), r.lambda) {
            ("BothZero", None) => Proportionality::BothZero,
            ("NotProportional", None) => Proportionality::NotProportional,
            ("Proportional", Some(q)) => {
                Proportionality::Proportional(parse_rational(&q).map_err(|e| e.to_string())?)
            }
            (other, lambda) => return Err(format!("bad outcome {other:?} with lambda {lambda:?}")),
        };
        Ok(ReportRow { m: r.m, l: r.l, outcome })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Conclusion {
    TheoremConfirmed,
    /// A row other than `(p, s)` admits constants, or `(p, s)` does not give
    /// `lambda = 1`. `lambda` is absent when both sides vanish.
    CounterexampleFound {
        m: u32,
        l: u32,
        #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_ratio")]
        lambda: Option<Rational>,
    },
    PreconditionFailed,
}

mod opt_ratio {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => ser.serialize_str(&to_ratio_string(q)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(de)?;
        s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: TheoremParams,
    pub precondition_ok: bool,
    pub rows: Vec<ReportRow>,
    pub conclusion: Conclusion,
}

impl VerificationReport {
    pub fn confirmed(&self) -> bool {
        self.conclusion == Conclusion::TheoremConfirmed
    }
}

fn conclude(params: &TheoremParams, precondition_ok: bool, rows: &[ReportRow]) -> Conclusion {
    if !precondition_ok {
        return Conclusion::PreconditionFailed;
    }
    for row in rows {
        let expected_row = row.m == params.p;
        let bad = match &row.outcome {
            Proportionality::NotProportional => expected_row,
            Proportionality::BothZero => true,
            Proportionality::Proportional(q) => !expected_row || *q != int(1),
        };
        if bad {
            let lambda = match &row.outcome {
                Proportionality::Proportional(q) => Some(q.clone()),
                _ => None,
            };
            return Conclusion::CounterexampleFound { m: row.m, l: row.l, lambda };
        }
    }
    Conclusion::TheoremConfirmed
}

/// Checks `m = 1..=m_max` (with `l = m + s - p`) and summarises.
pub fn verify_theorem1(params: &TheoremParams, m_max: u32) -> Result<VerificationReport> {
    params.validate()?;
    if m_max < params.p {
        return Err(Error::InvalidParams(format!(
            "m_max = {m_max} must be at least p = {}",
            params.p
        )));
    }
    let row = |m: u32| {
        let cand = CandidatePair::new(params, m).expect("validated");
        ReportRow { m, l: cand.l, outcome: check_instance(params, &cand) }
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<ReportRow> = {
        use rayon::prelude::*;
        (1..=m_max).into_par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<ReportRow> = (1..=m_max).map(row).collect();

    let precondition_ok = precondition_holds(params);
    let conclusion = conclude(params, precondition_ok, &rows);
    Ok(VerificationReport { params: *params, precondition_ok, rows, conclusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn params(p: u32, s: u32, m: u32, n: u32) -> TheoremParams {
        TheoremParams::new(p, s, m, n).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(TheoremParams::new(3, 2, 1, 1).is_err());
        assert!(TheoremParams::new(2, 2, 1, 1).is_err());
        assert!(TheoremParams::new(0, 2, 1, 1).is_err());
        assert!(TheoremParams::new(1, 2, 0, 1).is_err());
        assert_eq!(CandidatePair::new(&params(2, 5, 1, 1), 3).unwrap(), CandidatePair { m: 3, l: 6 });
    }

    #[test]
    fn factors_for_smallest_instance() {
        let pr = params(1, 2, 1, 1);
        let f = prod_factors(&pr, &CandidatePair::new(&pr, 1).unwrap());
        assert_eq!(f.r, [ratio(3, 5), ratio(4, 6), ratio(4, 5), ratio(2, 3)]);
        assert_eq!(f.p, [ratio(4, 5), ratio(2, 3), ratio(3, 5), ratio(4, 6)]);
        let sides = build_prod_sides(&pr, &CandidatePair { m: 1, l: 2 });
        assert_eq!(sides.lhs.eval(&int(0)).unwrap(), frac(8, 225));
        assert_eq!(sides.lhs, sides.rhs);
    }

    #[test]
    fn check_instance_examples() {
        let pr = params(1, 2, 1, 1);
        assert_eq!(
            check_instance(&pr, &CandidatePair::new(&pr, 1).unwrap()),
            Proportionality::Proportional(int(1))
        );
        assert_eq!(
            check_instance(&pr, &CandidatePair::new(&pr, 2).unwrap()),
            Proportionality::NotProportional
        );
        let pr = params(2, 3, 1, 1);
        assert_eq!(
            check_instance(&pr, &CandidatePair::new(&pr, 3).unwrap()),
            Proportionality::NotProportional
        );
    }

    #[test]
    fn pole_diff_examples() {
        let pr = params(2, 3, 1, 1);
        let sides = build_prod_sides(&pr, &CandidatePair::new(&pr, 3).unwrap());
        let d = pole_diff(&sides.lhs, &sides.rhs);
        assert!(d.only_lhs.multiplicity(&int(-6)) >= 1);
        assert!(d.certifies_mismatch());

        let same = ratio(2, 3);
        let d = pole_diff(&same, &same);
        assert!(d.only_lhs.is_empty() && d.only_rhs.is_empty());
        assert_eq!(d.shared.poles, vec![(int(-3), 1)]);

        let a = RationalFunction::simple_pole(int(2));
        let b = RationalFunction::simple_pole(int(3));
        let d = pole_diff(&a, &b);
        assert_eq!(d.only_lhs.poles, vec![(int(-2), 1)]);
        assert_eq!(d.only_rhs.poles, vec![(int(-3), 1)]);
        assert!(d.shared.is_empty());
    }

    #[test]
    fn pole_diff_respects_multiplicity() {
        let a = RationalFunction::simple_pole(int(2)) * RationalFunction::simple_pole(int(2));
        let b = RationalFunction::simple_pole(int(2));
        let d = pole_diff(&a, &b);
        assert_eq!(d.only_lhs.poles, vec![(int(-2), 1)]);
        assert_eq!(d.shared.poles, vec![(int(-2), 1)]);
    }

    #[test]
    fn verify_smallest_instance() {
        let report = verify_theorem1(&params(1, 2, 1, 1), 10).unwrap();
        assert!(report.precondition_ok);
        assert_eq!(report.rows.len(), 10);
        assert_eq!(report.rows[0].outcome, Proportionality::Proportional(int(1)));
        assert!(report.rows[1..].iter().all(|r| r.outcome == Proportionality::NotProportional));
        assert_eq!(report.conclusion, Conclusion::TheoremConfirmed);
        assert!(verify_theorem1(&params(2, 3, 1, 1), 1).is_err());
    }

    #[test]
    fn verify_larger_instance() {
        let report = verify_theorem1(&params(2, 4, 2, 3), 20).unwrap();
        assert!(report.confirmed());
        let hits: Vec<u32> = report
            .rows
            .iter()
            .filter(|r| matches!(r.outcome, Proportionality::Proportional(_)))
            .map(|r| r.m)
            .collect();
        assert_eq!(hits, vec![2]);
    }

    #[test]
    fn conclusion_logic() {
        let pr = params(1, 2, 1, 1);
        let row = |m, outcome| ReportRow { m, l: m + 1, outcome };
        let good = vec![
            row(1, Proportionality::Proportional(int(1))),
            row(2, Proportionality::NotProportional),
        ];
        assert_eq!(conclude(&pr, true, &good), Conclusion::TheoremConfirmed);
        assert_eq!(conclude(&pr, false, &good), Conclusion::PreconditionFailed);
        let extra = vec![good[0].clone(), row(2, Proportionality::Proportional(int(3)))];
        assert_eq!(
            conclude(&pr, true, &extra),
            Conclusion::CounterexampleFound { m: 2, l: 3, lambda: Some(int(3)) }
        );
        let wrong_lambda = vec![row(1, Proportionality::Proportional(int(2)))];
        assert!(matches!(conclude(&pr, true, &wrong_lambda), Conclusion::CounterexampleFound { m: 1, .. }));
        let zero = vec![good[0].clone(), row(2, Proportionality::BothZero)];
        assert_eq!(
            conclude(&pr, true, &zero),
            Conclusion::CounterexampleFound { m: 2, l: 3, lambda: None }
        );
    }

    #[test]
    fn report_json_schema_and_round_trip() {
        let report = verify_theorem1(&params(1, 2, 1, 1), 3).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["params"], serde_json::json!({"p": 1, "s": 2, "M": 1, "N": 1}));
        assert_eq!(json["rows"][0], serde_json::json!({"m": 1, "l": 2, "outcome": "Proportional", "lambda": "1/1"}));
        assert_eq!(json["rows"][1], serde_json::json!({"m": 2, "l": 3, "outcome": "NotProportional"}));
        assert_eq!(json["conclusion"], serde_json::json!({"status": "TheoremConfirmed"}));
        let back: VerificationReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, report);

        let cx = VerificationReport {
            conclusion: Conclusion::CounterexampleFound { m: 4, l: 5, lambda: Some(frac(-2, 3)) },
            ..report
        };
        let text = serde_json::to_string(&cx).unwrap();
        assert!(text.contains("\"lambda\":\"-2/3\""));
        assert_eq!(serde_json::from_str::<VerificationReport>(&text).unwrap(), cx);
    }

    #[test]
    fn malformed_rows_are_rejected() {
        let bad = r#"{"m":1,"l":2,"outcome":"Proportional"}"#;
        assert!(serde_json::from_str::<ReportRow>(bad).is_err());
        let bad = r#"{"m":1,"l":2,"outcome":"Maybe"}"#;
        assert!(serde_json::from_str::<ReportRow>(bad).is_err());
    }
}
