use serde::Serialize;

use crate::group::FiniteGroup;

/// How the computed evidence relates to the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// The evidence supports the outcome.
    Passed,
    /// The evidence contradicts the outcome.
    Failed,
    /// Nothing decisive within the computed range.
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub theorem: String,
    /// Canonical hash of the group.
    pub group: String,
    pub name: String,
    pub holds: bool,
    pub check: Check,
    pub evidence: serde_json::Value,
}

impl Verdict {
    pub fn new(theorem: &str, group: &FiniteGroup, holds: bool, check: Check, evidence: serde_json::Value) -> Self {
        Verdict {
            theorem: theorem.to_string(),
            group: group.canonical_hash().to_string(),
            name: group.name().to_string(),
            holds,
            check,
            evidence,
        }
    }

    pub fn failed(&self) -> bool {
        self.check == Check::Failed
    }
}

pub(crate) fn labels(group: &FiniteGroup, elements: &[usize]) -> Vec<String> {
    elements.iter().map(|&g| group.label(g)).collect()
}
