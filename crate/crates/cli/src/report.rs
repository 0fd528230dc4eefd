use serde::Serialize;
use serde_json::Value;

use crate::docs::SCHEMA_VERSION;

/// Echo of the invocation, so a report can be matched to its inputs.
#[derive(Clone, Debug, Default, Serialize)]
pub struct JobEcho {
    pub spaces: Vec<String>,
    pub twist: Option<String>,
    pub cap: usize,
    pub basepoint: Option<String>,
    pub seed: Option<u64>,
}

/// One named check and its verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    pub job: JobEcho,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
    /// Command-specific results (homology summaries, counts, matrices).
    pub results: serde_json::Map<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, job: JobEcho) -> Self {
        Self {
            version: SCHEMA_VERSION,
            command: command.to_string(),
            job,
            passed: true,
            verdicts: Vec::new(),
            results: serde_json::Map::new(),
            notes: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn verdict(&mut self, check: impl Into<String>, witness: Option<String>) {
        let passed = witness.is_none();
        self.passed &= passed;
        self.verdicts.push(Verdict { check: check.into(), passed, witness });
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(value).expect("serializable result"));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Plain-text rendering for the terminal.
    pub fn render(&self) -> String {
        let mut out = Vec::new();
        for (key, value) in &self.results {
            match value {
                Value::Array(items) if key.ends_with("homology") => {
                    let parts: Vec<String> =
                        items.iter().enumerate().map(|(n, g)| format!("{n}: {}", g.as_str().unwrap_or("?"))).collect();
                    out.push(format!("{key}: {}", parts.join(", ")));
                }
                Value::Array(_) | Value::Object(_) if key.ends_with("matrices") => {}
                other => out.push(format!("{key}: {other}")),
            }
        }
        for v in &self.verdicts {
            let status = if v.passed { "PASS" } else { "FAIL" };
            match &v.witness {
                Some(w) => out.push(format!("{status} {}: {w}", v.check)),
                None => out.push(format!("{status} {}", v.check)),
            }
        }
        for n in &self.notes {
            out.push(format!("note: {n}"));
        }
        out.join("\n")
    }
}
