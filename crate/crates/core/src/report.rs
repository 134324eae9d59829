//! Structured pass/fail records for inequality checks.
//!
//! Every inequality is normalised to `lhs ≤ rhs`, so `slack = rhs - lhs`
//! and a check passes when `slack ≥ -tolerance`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::trigpoly::MinCertificate;

/// Where the numbers in a report come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Integer or Gaussian-integer arithmetic, no rounding.
    Exact,
    /// Uses certified minimum brackets (see `certificates`).
    Certified,
    /// Uses grid quadrature or grid maxima.
    Grid,
}

/// One auxiliary assertion inside a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl SubCheck {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = rhs - lhs;
        SubCheck {
            name: name.into(),
            lhs,
            rhs,
            slack,
            tolerance,
            pass: slack >= -tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub inputs: serde_json::Value,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    /// Headline inequality holds and every subcheck passes (or vacuous).
    pub pass: bool,
    /// A precondition gate made the statement vacuous.
    pub vacuous: bool,
    pub constants_used: BTreeMap<String, f64>,
    /// Smallest value of the configured constant that would still pass.
    pub observed_min_constant: Option<f64>,
    pub provenance: Provenance,
    pub certificates: Vec<MinCertificate>,
    pub subchecks: Vec<SubCheck>,
    pub notes: Vec<String>,
}

impl LemmaReport {
    pub fn new(lemma_id: impl Into<String>, inputs: serde_json::Value) -> Self {
        LemmaReport {
            lemma_id: lemma_id.into(),
            inputs,
            lhs: 0.0,
            rhs: 0.0,
            slack: 0.0,
            tolerance: 0.0,
            pass: false,
            vacuous: false,
            constants_used: BTreeMap::new(),
            observed_min_constant: None,
            provenance: Provenance::Grid,
            certificates: Vec::new(),
            subchecks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn exact(mut self) -> Self {
        self.provenance = Provenance::Exact;
        self
    }

    pub fn certified(mut self, certs: impl IntoIterator<Item = MinCertificate>) -> Self {
        self.provenance = Provenance::Certified;
        self.certificates.extend(certs);
        self
    }

    /// Sets the headline inequality `lhs ≤ rhs` (up to `tolerance`).
    pub fn inequality(mut self, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.slack = rhs - lhs;
        self.tolerance = tolerance;
        self
    }

    pub fn subcheck(mut self, name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        self.subchecks.push(SubCheck::new(name, lhs, rhs, tolerance));
        self
    }

    /// A zero-tolerance subcheck.
    pub fn subcheck_exact(self, name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        self.subcheck(name, lhs, rhs, 0.0)
    }

    /// Records a pass/fail fact that has no natural two-sided form.
    pub fn assertion(self, name: impl Into<String>, holds: bool) -> Self {
        self.subcheck_exact(name, if holds { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn constant(mut self, name: &str, value: f64) -> Self {
        self.constants_used.insert(name.to_string(), value);
        self
    }

    pub fn observed(mut self, value: f64) -> Self {
        self.observed_min_constant = Some(value);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn mark_vacuous(mut self, reason: &str) -> Self {
        self.vacuous = true;
        self.notes.push(format!("vacuous: {reason}"));
        self
    }

    /// Computes `pass`; call once all parts are in place.
    pub fn finish(mut self) -> Self {
        self.pass = self.vacuous
            || (self.slack >= -self.tolerance && self.subchecks.iter().all(|c| c.pass));
        self
    }

    /// Genuine (non-vacuous) pass.
    pub fn passed_genuinely(&self) -> bool {
        self.pass && !self.vacuous
    }

    /// The same headline inequality with its direction flipped, used to
    /// check that the harness can fail.
    pub fn reversed(&self) -> LemmaReport {
        let mut r = self.clone();
        r.lemma_id = format!("{}:reversed", self.lemma_id);
        r.vacuous = false;
        r.subchecks.clear();
        r.inequality(self.rhs, self.lhs, self.tolerance).finish()
    }

    /// Name of the first failing subcheck, if any.
    pub fn first_failure(&self) -> Option<&str> {
        if self.vacuous {
            return None;
        }
        if self.slack < -self.tolerance {
            return Some("headline");
        }
        self.subchecks.iter().find(|c| !c.pass).map(|c| c.name.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_slack_within_tolerance() {
        let r = LemmaReport::new("x", serde_json::Value::Null).inequality(1.0, 2.0, 0.0).finish();
        assert!(r.pass && r.slack == 1.0);
        let r = LemmaReport::new("x", serde_json::Value::Null).inequality(2.0, 1.0, 0.5).finish();
        assert!(!r.pass);
        let r = LemmaReport::new("x", serde_json::Value::Null).inequality(1.2, 1.0, 0.5).finish();
        assert!(r.pass);
    }

    #[test]
    fn reversal_flips_strict_pass() {
        let r = LemmaReport::new("x", serde_json::Value::Null).inequality(1.0, 3.0, 1e-9).finish();
        assert!(r.pass);
        assert!(!r.reversed().pass);
    }

    #[test]
    fn failing_subcheck_fails_report() {
        let r = LemmaReport::new("x", serde_json::Value::Null)
            .inequality(0.0, 1.0, 0.0)
            .subcheck_exact("bad", 2.0, 1.0)
            .finish();
        assert!(!r.pass);
        assert_eq!(r.first_failure(), Some("bad"));
    }

    #[test]
    fn vacuous_passes() {
        let r = LemmaReport::new("x", serde_json::Value::Null)
            .inequality(5.0, 0.0, 0.0)
            .mark_vacuous("gate")
            .finish();
        assert!(r.pass && r.vacuous && !r.passed_genuinely());
    }
}
