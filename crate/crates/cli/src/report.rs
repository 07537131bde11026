use std::path::Path;

use serde::Serialize;
use serde_json::Value;

/// Envelope for every command's JSON output. Field order is fixed.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub elapsed_ms: u64,
    pub version: String,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, results: Value, elapsed_ms: u64) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            results,
            elapsed_ms,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_json())
    }
}
