use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use nucalab::analysis::{Subject, Verdict};
use nucalab::{rule_to_json, RuleConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubjectVerdict {
    pub subject: Subject,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Envelope shared by every command's JSON output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleConfig>,
    #[serde(default)]
    pub verdicts: Vec<SubjectVerdict>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
    pub timing_ms: u64,
}

/// SHA-256 of the canonical rule file text.
pub fn rule_digest(s: &RuleConfig) -> String {
    hex::encode(Sha256::digest(rule_to_json(s).as_bytes()))
}

impl RunReport {
    pub fn new(command: Vec<String>, rule: Option<&RuleConfig>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            rule_digest: rule.map(rule_digest),
            rule: rule.cloned(),
            verdicts: Vec::new(),
            details: serde_json::Value::Null,
            timing_ms: 0,
        }
    }

    pub fn push(&mut self, subject: Subject, verdict: Verdict) {
        self.verdicts.push(SubjectVerdict { subject, verdict });
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }
}
