//! Check reports and the bookkeeping helper every verifier uses.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::coeff::Scalar;
use crate::torus::TorusElement;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIP")]
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// The first disagreeing coefficient of a failed comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    /// Automorphism component (`id` for plain series).
    pub key: String,
    pub param: String,
    pub gen: String,
    pub expected: String,
    pub actual: String,
    /// Grading degree of the differing term; `None` for non-term failures.
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub order: Option<u32>,
    pub terms: usize,
    pub ms: u64,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Status of a named subcheck, if it was recorded.
    pub fn subcheck(&self, name: &str) -> Option<&str> {
        self.params.get("subchecks")?.get(name)?.as_str()
    }

    pub fn notes(&self) -> Vec<String> {
        match self.params.get("notes") {
            Some(Value::Array(v)) => v.iter().filter_map(|x| x.as_str().map(String::from)).collect(),
            _ => Vec::new(),
        }
    }
}

/// Accumulates subcheck outcomes for one report.
pub struct Checker {
    name: String,
    params: BTreeMap<String, Value>,
    subs: BTreeMap<String, Status>,
    notes: Vec<String>,
    witness: Option<Witness>,
    terms: usize,
    order: Option<u32>,
    start: Instant,
}

impl Checker {
    pub fn new(name: &str, order: Option<u32>) -> Self {
        Checker {
            name: name.to_string(),
            params: BTreeMap::new(),
            subs: BTreeMap::new(),
            notes: Vec::new(),
            witness: None,
            terms: 0,
            order,
            start: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn add_terms(&mut self, n: usize) {
        self.terms += n;
    }

    fn record(&mut self, label: &str, st: Status) {
        let slot = self.subs.entry(label.to_string()).or_insert(st);
        if st == Status::Fail {
            *slot = Status::Fail;
        }
    }

    fn fail_with(&mut self, w: Witness) {
        self.record(&w.label.clone(), Status::Fail);
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    /// Compares two series; on mismatch records the lowest-degree differing term.
    pub fn torus_eq<K: Scalar>(&mut self, label: &str, lhs: &TorusElement<K>, rhs: &TorusElement<K>) -> bool {
        self.torus_eq_keyed(label, "id", lhs, rhs)
    }

    pub fn torus_eq_keyed<K: Scalar>(
        &mut self,
        label: &str,
        key: &str,
        lhs: &TorusElement<K>,
        rhs: &TorusElement<K>,
    ) -> bool {
        self.terms += lhs.len() + rhs.len();
        match lhs.first_difference(rhs) {
            None => {
                self.record(label, Status::Pass);
                true
            }
            Some((k, l, r)) => {
                let alg = lhs.algebra();
                self.fail_with(Witness {
                    label: label.to_string(),
                    key: key.to_string(),
                    param: k.p.to_string(),
                    gen: alg.monomial_name(&k.e),
                    expected: r.to_string(),
                    actual: l.to_string(),
                    degree: Some(k.degree()),
                });
                false
            }
        }
    }

    /// Records a pass/fail boolean with explicit expected/actual strings.
    pub fn assert(&mut self, label: &str, ok: bool, expected: impl fmt::Display, actual: impl fmt::Display) -> bool {
        if ok {
            self.record(label, Status::Pass);
        } else {
            self.fail_with(Witness {
                label: label.to_string(),
                key: String::new(),
                param: String::new(),
                gen: String::new(),
                expected: expected.to_string(),
                actual: actual.to_string(),
                degree: None,
            });
        }
        ok
    }

    /// Records a failure raised as an error by the algebra layer.
    pub fn error(&mut self, label: &str, e: &Error) {
        self.fail_with(Witness {
            label: label.to_string(),
            key: String::new(),
            param: String::new(),
            gen: String::new(),
            expected: "no error".into(),
            actual: e.to_string(),
            degree: None,
        });
    }

    /// Unwraps a computation, recording an error failure on `Err`.
    pub fn ok<T>(&mut self, label: &str, r: Result<T, Error>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.error(label, &e);
                None
            }
        }
    }

    pub fn skip(&mut self, label: &str, note: impl Into<String>) {
        self.record(label, Status::Skip);
        self.notes.push(note.into());
    }

    pub fn failed(&self) -> bool {
        self.subs.values().any(|s| *s == Status::Fail)
    }

    pub fn finish(mut self) -> CheckReport {
        let status = if self.failed() {
            Status::Fail
        } else if !self.subs.is_empty() && self.subs.values().all(|s| *s == Status::Skip) {
            Status::Skip
        } else {
            Status::Pass
        };
        let subs: serde_json::Map<String, Value> = self
            .subs
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
            .collect();
        self.params.insert("subchecks".into(), Value::Object(subs));
        if !self.notes.is_empty() {
            self.params.insert("notes".into(), Value::from(self.notes.clone()));
        }
        CheckReport {
            check: self.name,
            params: self.params,
            status,
            order: self.order,
            terms: self.terms,
            ms: self.start.elapsed().as_millis() as u64,
            witness: self.witness,
        }
    }
}

/// Deliberate corruptions used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Dilogarithm base exponent shifted by one.
    BasePlusOne,
    /// Dilogarithm base `Q` replaced by `Q^2`.
    BaseTimesTwo,
    /// Base `q^r` in place of `q^{r+1}`.
    BaseR,
    /// `w` and `w~` exchanged on one side.
    SwapW,
    /// One sign flipped in a matrix entry.
    SignFlip,
    /// Arbitrary-series slot forced to 1 where an inverse is required.
    FOne,
    /// Wrong `q`-prefactor in the second central element.
    C1Q2,
    /// An extra degree-one term added to one series factor.
    Perturb,
    /// Entry (1,3) of a homomorphism image mis-assigned.
    Phi13,
    /// `b2 -> b2` inside the tetrahedral automorphism.
    FB2,
    /// Minus-sign variant of the tetrahedral automorphism.
    FMinus,
}

impl Mutation {
    pub const ALL: [(&'static str, Mutation); 11] = [
        ("base+1", Mutation::BasePlusOne),
        ("base*2", Mutation::BaseTimesTwo),
        ("base-r", Mutation::BaseR),
        ("swap-w", Mutation::SwapW),
        ("sign-flip", Mutation::SignFlip),
        ("f-one", Mutation::FOne),
        ("c1-q2", Mutation::C1Q2),
        ("perturb", Mutation::Perturb),
        ("phi-13", Mutation::Phi13),
        ("F-b2", Mutation::FB2),
        ("Fminus", Mutation::FMinus),
    ];

    pub fn parse(tag: &str) -> Option<Mutation> {
        Self::ALL.iter().find(|(t, _)| *t == tag).map(|(_, m)| *m)
    }

    pub fn tag(&self) -> &'static str {
        Self::ALL.iter().find(|(_, m)| m == self).map(|(t, _)| *t).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Params, QContext, RationalQ};
    use crate::torus::make_qweyl;

    #[test]
    fn failure_records_lowest_degree_witness() {
        let alg = make_qweyl(QContext::symbolic(), 1).unwrap();
        let one = TorusElement::one(&alg, Some(3));
        let x = TorusElement::gen(&alg, 0, 1).scale_params(Params::lambda(2));
        let y = TorusElement::gen(&alg, 1, 1).scale_params(Params::lambda(1));
        let lhs = one.add(&x).unwrap().add(&y).unwrap();
        let rhs = one.add(&x).unwrap();
        let mut c = Checker::new("demo", Some(3));
        assert!(!c.torus_eq("sum", &lhs, &rhs));
        assert!(c.torus_eq("same", &rhs, &rhs));
        let rep = c.finish();
        assert_eq!(rep.status, Status::Fail);
        let w = rep.witness.unwrap();
        assert_eq!(w.degree, Some(1));
        assert_eq!(w.gen, "b1");
        assert_eq!(w.expected, RationalQ::zero().to_string());
        assert_eq!(rep.params["subchecks"]["same"], "PASS");
    }

    #[test]
    fn all_skipped_is_skip() {
        let mut c = Checker::new("demo", None);
        c.skip("a", "not applicable");
        assert_eq!(c.finish().status, Status::Skip);
        let mut c = Checker::new("demo", None);
        c.skip("a", "not applicable");
        c.assert("b", true, 1, 1);
        assert_eq!(c.finish().status, Status::Pass);
    }
}
