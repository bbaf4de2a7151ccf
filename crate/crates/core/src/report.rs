//! Verification reports: named pass/fail checks with exact residuals.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::linalg::RatMatrix;
use crate::scalars::{ParamSpec, Rat};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest absolute entry of `lhs - rhs` for matrix identities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub kind: String,
    pub instance: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamSpec>,
    pub dims: BTreeMap<String, usize>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub extra: Value,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(kind: impl Into<String>, instance: Value, params: Option<&ParamSpec>) -> Self {
        VerificationReport {
            kind: kind.into(),
            instance,
            params: params.cloned(),
            dims: BTreeMap::new(),
            checks: Vec::new(),
            extra: Value::Null,
            passed: true,
        }
    }

    pub fn dim(&mut self, name: impl Into<String>, d: usize) {
        self.dims.insert(name.into(), d);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) -> bool {
        self.push(CheckResult {
            name: name.into(),
            passed,
            residual: None,
            detail: None,
        })
    }

    pub fn check_with(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.push(CheckResult {
            name: name.into(),
            passed,
            residual: None,
            detail: Some(detail.into()),
        })
    }

    /// Records `lhs == rhs` with the residual; shape mismatches fail.
    pub fn check_eq(&mut self, name: impl Into<String>, lhs: &RatMatrix, rhs: &RatMatrix) -> bool {
        let name = name.into();
        match lhs.try_sub(rhs) {
            Ok(diff) => {
                let residual = diff.max_abs();
                self.push(CheckResult {
                    name,
                    passed: residual.is_zero(),
                    residual: Some(residual),
                    detail: None,
                })
            }
            Err(e) => self.push(CheckResult {
                name,
                passed: false,
                residual: None,
                detail: Some(e.to_string()),
            }),
        }
    }

    pub fn push(&mut self, c: CheckResult) -> bool {
        let ok = c.passed;
        self.passed &= ok;
        self.checks.push(c);
        ok
    }

    /// Records an error that stopped the verification early.
    pub fn fail(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        self.check_with(name, false, err.to_string());
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.push(c);
        }
        for (k, v) in other.dims {
            self.dims.insert(format!("{prefix}{k}"), v);
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {}{}: {}\n",
            self.kind,
            self.instance,
            self.params.as_ref().map(|p| format!(" at {p}")).unwrap_or_default(),
            if self.passed { "PASS" } else { "FAIL" }
        );
        for (k, v) in &self.dims {
            out.push_str(&format!("  dim {k} = {v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name));
            if let Some(r) = &c.residual {
                if !r.is_zero() {
                    out.push_str(&format!(" (residual {r})"));
                }
            }
            if let Some(d) = &c.detail {
                out.push_str(&format!(" - {d}"));
            }
            out.push('\n');
        }
        out
    }
}
