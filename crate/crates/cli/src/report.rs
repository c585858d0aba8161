use serde::Serialize;
use serde_json::Value;

use crate::format::FORMAT;

/// The result document printed by every command. Bytes depend only on the
/// inputs unless timing is asked for.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub format: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    pub inputs: Vec<String>,
    /// `ok`, `true`/`false` for checks, `pass`/`fail` for suites
    pub outcome: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, scheme: Option<&str>, inputs: Vec<String>) -> Self {
        RunReport {
            format: FORMAT,
            command: command.into(),
            scheme: scheme.map(str::to_string),
            inputs,
            outcome: "ok".into(),
            result: Value::Null,
            elapsed_ms: None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }
}
