//! Structured command output.
//!
//! One JSON object per run. Every number is written as a string so exact
//! values and counts survive any consumer; wall-clock timing appears only
//! when requested, which keeps reports byte-identical across runs.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "gradid-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub passed: bool,
    pub verdicts: Vec<Value>,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<BTreeMap<String, String>>,
    /// Human-readable summary; not part of the document.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA,
            tool: "gradid",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            parameters: BTreeMap::new(),
            field: None,
            passed: true,
            verdicts: Vec::new(),
            counterexamples: Vec::new(),
            timing: None,
            lines: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn verdict(&mut self, v: &impl Serialize) {
        self.verdicts.push(serde_json::to_value(v).expect("serializable verdict"));
    }

    pub fn counterexample(&mut self, v: &impl Serialize) {
        self.passed = false;
        self.counterexamples.push(serde_json::to_value(v).expect("serializable counterexample"));
    }

    pub fn to_json(&self) -> String {
        let v = stringify_numbers(serde_json::to_value(self).expect("serializable report"));
        let mut s = serde_json::to_string_pretty(&v).expect("valid json");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(items) => Value::Array(items.into_iter().map(stringify_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}
