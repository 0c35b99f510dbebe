//! Outcome of running a script, rendered as text or JSON. The canonical part
//! is byte-stable; timings go to a separate footer.

use std::fmt::Write;
use std::time::Duration;

use serde_json::{json, Value};
use thiserror::Error;

/// The first hard error of a run, located at the item that raised it.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: `{command}`: {message}")]
pub struct CommandError {
    pub line: usize,
    pub col: usize,
    pub command: String,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub command: String,
    /// `None` for declarations and other items without a verdict.
    pub verdict: Option<bool>,
    pub lines: Vec<String>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<Entry>,
    pub error: Option<CommandError>,
}

fn tag(e: &Entry) -> &'static str {
    match e.verdict {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None if e.command.starts_with("show ") => "info",
        None => "def",
    }
}

fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

impl Report {
    pub fn checks(&self) -> usize {
        self.entries.iter().filter(|e| e.verdict.is_some()).count()
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| e.verdict == Some(false)).count()
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.failures() == 0
    }

    /// 0 when every check passes, 1 on a failed check, 2 on a hard error.
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            2
        } else if self.failures() > 0 {
            1
        } else {
            0
        }
    }

    pub fn entry(&self, command_prefix: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.command.starts_with(command_prefix))
    }

    fn summary(&self) -> String {
        match &self.error {
            Some(_) => "result: error".to_string(),
            None if self.failures() == 0 => format!("result: pass ({} checks)", self.checks()),
            None => format!("result: fail ({} of {} checks failed)", self.failures(), self.checks()),
        }
    }

    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            writeln!(out, "[{}] {}", tag(e), e.command).unwrap();
            for l in &e.lines {
                writeln!(out, "    {l}").unwrap();
            }
        }
        if let Some(err) = &self.error {
            writeln!(out, "[error] {err}").unwrap();
        }
        writeln!(out, "{}", self.summary()).unwrap();
        out
    }

    pub fn timing_text(&self) -> String {
        let mut out = String::new();
        let total: Duration = self.entries.iter().map(|e| e.elapsed).sum();
        writeln!(out, "timing: {:.3} ms total", millis(total)).unwrap();
        for (i, e) in self.entries.iter().enumerate() {
            writeln!(out, "  #{i} {:.3} ms", millis(e.elapsed)).unwrap();
        }
        out
    }

    /// Canonical text, a `---` separator, then the timing footer.
    pub fn to_text(&self) -> String {
        format!("{}---\n{}", self.canonical_text(), self.timing_text())
    }

    pub fn canonical_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "command": e.command,
                    "verdict": e.verdict.map(|v| if v { "pass" } else { "fail" }),
                    "lines": e.lines,
                })
            })
            .collect();
        let error = self.error.as_ref().map(|e| {
            json!({ "line": e.line, "col": e.col, "command": e.command, "message": e.message })
        });
        json!({
            "entries": entries,
            "error": error,
            "passed": self.passed(),
            "exit_code": self.exit_code(),
        })
    }

    pub fn timing_json(&self) -> Value {
        let per: Vec<f64> = self.entries.iter().map(|e| millis(e.elapsed)).collect();
        json!({ "total_ms": per.iter().sum::<f64>(), "per_entry_ms": per })
    }

    /// `{"report": <canonical>, "timing": <footer>}` with sorted keys.
    pub fn to_json(&self) -> String {
        let v = json!({ "report": self.canonical_json(), "timing": self.timing_json() });
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }
}
