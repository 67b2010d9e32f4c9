//! Structured outcomes shared by the identity and congruence suites:
//! one case per checked instance, deterministic ordering, and totals
//! that always sum to the case count. Rationals serialize as exact
//! `p/q` strings.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::exactnum::Rational;
use crate::polyalg::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A precondition (singular denominator, pinned validity window,
    /// violated hypothesis) excludes the case; never a silent skip.
    Inapplicable,
    /// The rational's denominator is divisible by the modulus, so the
    /// congruence statement does not apply to this (value, q).
    DenominatorDivisible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
            Verdict::DenominatorDivisible => "denominator-divisible",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A named case parameter: an integer index or an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    Rat(Rational),
}

impl ParamValue {
    fn as_rational(&self) -> Rational {
        match self {
            ParamValue::Int(n) => Rational::from_integer((*n).into()),
            ParamValue::Rat(r) => r.clone(),
        }
    }
}

impl PartialOrd for ParamValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_rational().cmp(&other.as_rational())
    }
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Int(n) => s.serialize_i64(*n),
            ParamValue::Rat(r) => s.serialize_str(&r.to_string()),
        }
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Rat(r) => write!(f, "{r}"),
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// One side of a checked case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseValue {
    Scalar(Rational),
    /// Polynomial, as coefficients by ascending degree.
    Poly(Vec<Rational>),
    Residue(u64),
    ResidueSet(Vec<u64>),
    /// No value (hypothesis rejected before evaluation).
    Absent,
}

impl CaseValue {
    pub fn poly(p: &UniPoly) -> Self {
        CaseValue::Poly(p.coeffs().to_vec())
    }
}

impl Serialize for CaseValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CaseValue::Scalar(r) => s.serialize_str(&r.to_string()),
            CaseValue::Poly(cs) => s.collect_seq(cs.iter().map(|c| c.to_string())),
            CaseValue::Residue(v) => s.serialize_u64(*v),
            CaseValue::ResidueSet(vs) => s.collect_seq(vs.iter()),
            CaseValue::Absent => s.serialize_none(),
        }
    }
}

impl std::fmt::Display for CaseValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseValue::Scalar(r) => write!(f, "{r}"),
            CaseValue::Poly(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            CaseValue::Residue(v) => write!(f, "{v}"),
            CaseValue::ResidueSet(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            CaseValue::Absent => write!(f, "-"),
        }
    }
}

/// Outcome of a single identity or congruence instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckCase {
    pub id: String,
    pub params: Params,
    pub lhs: CaseValue,
    pub rhs: CaseValue,
    pub verdict: Verdict,
}

impl CheckCase {
    /// Sort key: (id, parameters lexicographically by name then value).
    fn key(&self) -> (&str, Vec<(&String, &ParamValue)>) {
        (&self.id, self.params.iter().collect())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub denominator_divisible: usize,
}

/// Aggregated, deterministically ordered suite outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: String,
    pub cases: Vec<CheckCase>,
    pub totals: Totals,
}

impl CheckReport {
    pub fn from_cases(suite: impl Into<String>, mut cases: Vec<CheckCase>) -> Self {
        cases.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut totals = Totals {
            total: cases.len(),
            ..Totals::default()
        };
        for c in &cases {
            match c.verdict {
                Verdict::Pass => totals.pass += 1,
                Verdict::Fail => totals.fail += 1,
                Verdict::Inapplicable => totals.inapplicable += 1,
                Verdict::DenominatorDivisible => totals.denominator_divisible += 1,
            }
        }
        CheckReport {
            suite: suite.into(),
            cases,
            totals,
        }
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckCase> {
        self.cases.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    /// Merges several reports into one (cases re-sorted, totals re-tallied).
    pub fn merge(suite: impl Into<String>, reports: Vec<CheckReport>) -> Self {
        let cases = reports.into_iter().flat_map(|r| r.cases).collect();
        CheckReport::from_cases(suite, cases)
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CheckReport", 3)?;
        st.serialize_field("suite", &self.suite)?;
        st.serialize_field("cases", &self.cases)?;
        st.serialize_field("totals", &self.totals)?;
        st.end()
    }
}

/// Convenience for building parameter maps.
pub fn params(entries: &[(&str, ParamValue)]) -> Params {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    #[test]
    fn totals_sum_and_order() {
        let mk = |id: &str, n: i64, v: Verdict| CheckCase {
            id: id.into(),
            params: params(&[("n", ParamValue::Int(n))]),
            lhs: CaseValue::Scalar(rat(1)),
            rhs: CaseValue::Scalar(rat(1)),
            verdict: v,
        };
        let report = CheckReport::from_cases(
            "t",
            vec![
                mk("B", 2, Verdict::Fail),
                mk("A", 1, Verdict::Pass),
                mk("B", 1, Verdict::Inapplicable),
            ],
        );
        assert_eq!(report.totals.total, 3);
        assert_eq!(
            report.totals.pass
                + report.totals.fail
                + report.totals.inapplicable
                + report.totals.denominator_divisible,
            report.totals.total
        );
        let ids: Vec<_> = report.cases.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["A", "B", "B"]);
        assert_eq!(report.cases[1].params["n"], ParamValue::Int(1));
    }

    #[test]
    fn rationals_serialize_as_fraction_strings() {
        let case = CheckCase {
            id: "X".into(),
            params: params(&[("y", ParamValue::Rat(ratio(-3, 2)))]),
            lhs: CaseValue::Scalar(ratio(1, 6)),
            rhs: CaseValue::Poly(vec![rat(0), ratio(2, 3)]),
            verdict: Verdict::Pass,
        };
        let json = serde_json::to_value(&case).unwrap();
        assert_eq!(json["params"]["y"], "-3/2");
        assert_eq!(json["lhs"], "1/6");
        assert_eq!(json["rhs"][1], "2/3");
        assert_eq!(json["verdict"], "pass");
    }

    #[test]
    fn param_ordering_is_numeric() {
        assert!(ParamValue::Rat(ratio(-3, 2)) < ParamValue::Int(-1));
        assert!(ParamValue::Int(1) < ParamValue::Rat(ratio(5, 2)));
    }
}
