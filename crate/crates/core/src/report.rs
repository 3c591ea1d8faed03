//! Check results shared by the verification suites and the command line.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status: Status::Pass, witness: None }
    }

    pub fn pass_with(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status: Status::Pass, witness: Some(witness.into()) }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status: Status::Fail, witness: Some(witness.into()) }
    }

    pub fn from_result<E: std::fmt::Display>(name: impl Into<String>, r: Result<String, E>) -> Self {
        match r {
            Ok(w) if w.is_empty() => Self::pass(name),
            Ok(w) => Self::pass_with(name, w),
            Err(e) => Self::fail(name, e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        match &self.witness {
            Some(w) => write!(f, "{tag} {}: {w}", self.name),
            None => write!(f, "{tag} {}", self.name),
        }
    }
}

/// How identities are sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Verification {
    /// All pairs/triples of constant generators.
    Exhaustive,
    /// `count` seeded random inputs with polynomial coefficients.
    Random { seed: u64, count: usize },
}
