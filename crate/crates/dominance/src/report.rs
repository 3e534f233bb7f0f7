//! Command reports, as JSON or text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        InputDigest {
            path: path.to_string(),
            sha256: format!("{:x}", Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictLine {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    pub verdicts: Vec<VerdictLine>,
    pub status: String,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            inputs: Vec::new(),
            result: Value::Object(Default::default()),
            verdicts: Vec::new(),
            status: String::new(),
            elapsed_ms: 0.0,
        }
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(VerdictLine {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        crate::format::to_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        for i in &self.inputs {
            let _ = writeln!(out, "input: {} sha256={}", i.path, i.sha256);
        }
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{k}: {shown}");
            }
        }
        for v in &self.verdicts {
            let tag = if v.pass { "PASS" } else { "FAIL" };
            if v.detail.is_empty() {
                let _ = writeln!(out, "{tag} {}", v.name);
            } else {
                let _ = writeln!(out, "{tag} {}: {}", v.name, v.detail);
            }
        }
        let _ = writeln!(out, "status: {}", self.status);
        let _ = writeln!(out, "elapsed: {:.3} ms", self.elapsed_ms);
        out
    }
}
