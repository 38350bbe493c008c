use eulerlab::euler::FVector;
use eulerlab::folded_proof::FoldedReport;
use eulerlab::schlegel_proof::SchlegelReport;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet: Option<usize>,
    /// Seconds since the Unix epoch; only recorded on request.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub f_vector: FVector,
    pub euler_sum: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schlegel: Option<SchlegelReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub folded: Option<FoldedReport>,
    pub pass: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
