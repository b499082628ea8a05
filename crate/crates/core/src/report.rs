//! Machine-readable reports.
//!
//! Schema `zwb-report/1`:
//!
//! ```text
//! {
//!   "schema": "zwb-report/1",
//!   "command": string,
//!   "inputs_digest": hex sha256 of the canonical input and flags,
//!   "seed": integer | null,
//!   "status": "pass" | "fail" | "inconclusive",
//!   "checks": [ { "name": string, "status": ..., "reason": string | null, "witness": any } ]
//! }
//! ```
//!
//! A check with status `inconclusive` always has a non-empty reason.
//! Wall-clock timings are deliberately left out so reports are reproducible.

use crate::error::{Error, Result};
use crate::status::Status;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "zwb-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub reason: Option<String>,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs_digest: String,
    pub seed: Option<u64>,
    pub status: Status,
    pub checks: Vec<Check>,
}

pub fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: &[&str]) -> Report {
        Report {
            schema: SCHEMA.into(),
            command: command.into(),
            inputs_digest: digest(inputs),
            seed: None,
            status: Status::Pass,
            checks: Vec::new(),
        }
    }

    /// Adds a check. An inconclusive verdict without a reason is recorded
    /// as a failure of the report itself.
    pub fn push(&mut self, name: impl Into<String>, status: Status, reason: impl Into<String>, witness: impl Serialize) {
        let reason = reason.into();
        let (status, reason) = match (status, reason.is_empty()) {
            (Status::Inconclusive, true) => (Status::Fail, Some("inconclusive verdict without a reason".to_string())),
            (_, true) => (status, None),
            (_, false) => (status, Some(reason)),
        };
        let witness = serde_json::to_value(witness).unwrap_or(Value::Null);
        self.status = self.status.and(status);
        self.checks.push(Check { name: name.into(), status, reason, witness });
    }

    /// 0 when everything passed, 1 on any failure, 2 when only
    /// inconclusive checks remain.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn human(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.status);
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}", c.status, c.name));
            if let Some(r) = &c.reason {
                out.push_str(&format!(": {r}"));
            }
            out.push('\n');
        }
        out
    }
}

fn schema_err(msg: impl Into<String>) -> Error {
    Error::Parse(format!("report schema: {}", msg.into()))
}

/// Checks a JSON document against the report schema.
pub fn validate_json(text: &str) -> Result<Report> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema_err(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| schema_err("not an object"))?;
    let keys = ["schema", "command", "inputs_digest", "seed", "status", "checks"];
    if let Some(k) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(schema_err(format!("unexpected key {k}")));
    }
    let r: Report = serde_json::from_value(v).map_err(|e| schema_err(e.to_string()))?;
    if r.schema != SCHEMA {
        return Err(schema_err(format!("unknown schema {}", r.schema)));
    }
    if r.inputs_digest.len() != 64 || !r.inputs_digest.chars().all(|c| c.is_ascii_hexdigit()) {
        return Err(schema_err("digest is not sha256 hex"));
    }
    for c in &r.checks {
        if c.status == Status::Inconclusive && c.reason.as_deref().is_none_or(str::is_empty) {
            return Err(schema_err(format!("inconclusive check {} has no reason", c.name)));
        }
    }
    if r.status != Status::all(r.checks.iter().map(|c| c.status)) {
        return Err(schema_err("overall status disagrees with the checks"));
    }
    Ok(r)
}
