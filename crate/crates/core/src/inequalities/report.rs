use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::matrix::{ComplexMatrix, C64};

/// Uniform slack tolerance for bound reports: `1e-8 * (1 + |rhs|)`.
pub fn default_tol(rhs: f64) -> f64 {
    1e-8 * (1.0 + rhs.abs())
}

/// One instance of an inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`
    pub slack: f64,
    pub tol: f64,
    /// `slack >= -tol`
    pub holds: bool,
    /// An implication whose premise failed: nothing to check, recorded as holding.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub vacuous: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witness: BTreeMap<String, ComplexMatrix>,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            name: name.into(),
            lhs,
            rhs,
            slack,
            tol,
            holds: slack >= -tol && lhs.is_finite() && rhs.is_finite(),
            vacuous: false,
            witness: BTreeMap::new(),
        }
    }

    /// Report with the uniform tolerance [`default_tol`].
    pub fn with_default_tol(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::new(name, lhs, rhs, default_tol(rhs))
    }

    /// Implication whose premise does not hold.
    pub fn vacuous(name: impl Into<String>) -> Self {
        let mut r = Self::new(name, 0.0, 0.0, 0.0);
        r.vacuous = true;
        r
    }

    pub fn witness_matrix(mut self, label: &str, m: ComplexMatrix) -> Self {
        self.witness.insert(label.to_string(), m);
        self
    }

    pub fn witness_vector(self, label: &str, v: &[C64]) -> Self {
        self.witness_matrix(label, ComplexMatrix::column_vector(v))
    }

    /// Slack divided by the tolerance scale `1 + |rhs|`.
    pub fn relative_slack(&self) -> f64 {
        self.slack / (1.0 + self.rhs.abs())
    }
}
