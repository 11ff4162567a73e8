use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LuckMode {
    L1,
    L2,
    L3,
    Rescher,
    Teigen,
}

impl fmt::Display for LuckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LuckMode::L1 => "L1",
            LuckMode::L2 => "L2",
            LuckMode::L3 => "L3",
            LuckMode::Rescher => "rescher",
            LuckMode::Teigen => "teigen",
        })
    }
}

/// One labelled contribution to a luck value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub value: f64,
}

impl Term {
    pub fn new(label: impl Into<String>, value: f64) -> Self {
        Term { label: label.into(), value }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LuckReport {
    pub mode: LuckMode,
    pub value: f64,
    /// Counterfactual shift chosen by the sweep; 0 when no shift applies.
    pub eta_star: f64,
    pub terms: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterfactual_id: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LuckReport {
    /// Builds a report whose value is the left-to-right sum of `terms`.
    pub fn from_terms(mode: LuckMode, terms: Vec<Term>) -> Self {
        let value = terms.iter().fold(0.0, |acc, t| acc + t.value);
        LuckReport { mode, value, eta_star: 0.0, terms, counterfactual_id: None, notes: Vec::new() }
    }

    pub fn terms_sum(&self) -> f64 {
        self.terms.iter().fold(0.0, |acc, t| acc + t.value)
    }

    /// Value equals the sum of its terms to within 1e-9 relative tolerance.
    pub fn is_consistent(&self) -> bool {
        let sum = self.terms_sum();
        let scale = self.value.abs().max(sum.abs()).max(1.0);
        (self.value - sum).abs() <= 1e-9 * scale
    }

    pub fn with_counterfactual(mut self, id: impl Into<String>) -> Self {
        self.counterfactual_id = Some(id.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}
