use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// JSON envelope printed by every command that reports.
#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: Vec<String>,
    /// SHA-256 over the arguments and the bytes of every input file.
    pub inputs_digest: String,
    pub outputs: Value,
    pub assertions: Vec<Assertion>,
    pub passed: bool,
}

/// Collects inputs and assertions while a command runs.
pub struct Recorder {
    args: Vec<String>,
    hasher: Sha256,
    assertions: Vec<Assertion>,
}

impl Recorder {
    pub fn new(args: Vec<String>) -> Self {
        let mut hasher = Sha256::new();
        for a in &args {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        Recorder { args, hasher, assertions: Vec::new() }
    }

    pub fn input(&mut self, path: &Path) -> anyhow::Result<()> {
        let bytes = std::fs::read(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        self.hasher.update(path.display().to_string().as_bytes());
        self.hasher.update([0]);
        self.hasher.update(&bytes);
        Ok(())
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.into(), passed, detail: detail.into() });
    }

    pub fn finish(self, outputs: Value) -> CommandReport {
        let passed = self.assertions.iter().all(|a| a.passed);
        CommandReport { command: self.args, inputs_digest: hex::encode(self.hasher.finalize()), outputs, assertions: self.assertions, passed }
    }
}
