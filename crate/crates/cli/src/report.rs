//! The report envelope shared by every verb, and its text/JSON rendering.

use std::io::Write;

use loopforge::diagnostics::{Check, Diagnostics};
use loopforge::Error;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub exit_code: u8,
    pub result: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    /// Printed instead of the summary in text mode (tables, manifests).
    #[serde(skip)]
    pub artifact: Option<String>,
}

impl Report {
    pub fn new(command: &str, ok: bool, result: Value, checks: Diagnostics) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Report {
            command: command.into(),
            status,
            exit_code: status.exit_code(),
            result,
            checks: checks.checks,
            error: None,
            artifact: None,
        }
    }

    pub fn with_artifact(mut self, text: String) -> Self {
        self.artifact = Some(text);
        self
    }

    /// Property failures exit 1; malformed input and exceeded caps exit 2.
    pub fn from_error(command: &str, e: Error) -> Self {
        let (status, kind) = match &e {
            Error::Conditions(_) => (Status::Fail, "conditions"),
            Error::Congruence { .. } => (Status::Fail, "congruence"),
            Error::Precondition(_) => (Status::Fail, "precondition"),
            Error::FactorizationImpossible(_) => (Status::Fail, "factorization-impossible"),
            Error::Singular => (Status::Fail, "singular"),
            Error::Internal(_) => (Status::Fail, "internal"),
            Error::Parse { .. } => (Status::Error, "parse"),
            Error::MalformedTable(_) => (Status::Error, "malformed-table"),
            Error::NotLatin(_) => (Status::Error, "not-latin"),
            Error::NoIdentity => (Status::Error, "no-identity"),
            Error::NotIdempotent { .. } => (Status::Error, "not-idempotent"),
            Error::InvalidPermutation(_) => (Status::Error, "invalid-permutation"),
            Error::SizeMismatch(_) => (Status::Error, "size-mismatch"),
            Error::ResourceCap { .. } => (Status::Error, "resource-cap"),
            Error::TooLargeForExhaustive { .. } => (Status::Error, "too-large"),
            Error::Io(_) => (Status::Error, "io"),
            Error::Json(_) => (Status::Error, "json"),
        };
        let message = e.to_string();
        let checks = match e {
            Error::Conditions(d) => d.checks,
            _ => Vec::new(),
        };
        Report {
            command: command.into(),
            status,
            exit_code: status.exit_code(),
            result: Value::Null,
            checks,
            error: Some(ErrorInfo { kind, message }),
            artifact: None,
        }
    }

    pub fn usage_error(message: String) -> Self {
        Report {
            command: String::new(),
            status: Status::Error,
            exit_code: 2,
            result: Value::Null,
            checks: Vec::new(),
            error: Some(ErrorInfo { kind: "usage", message }),
            artifact: None,
        }
    }

    /// In text mode an artifact goes to stdout and the summary to stderr, so
    /// that artifacts can be piped between verbs.
    pub fn emit(&self, json_mode: bool) {
        // a closed downstream pipe is not an error worth reporting
        let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
        if json_mode {
            let text = serde_json::to_string_pretty(self).expect("reports serialize");
            let _ = writeln!(out, "{text}");
            return;
        }
        let summary = self.text_summary();
        match &self.artifact {
            Some(a) => {
                let _ = out.write_all(a.as_bytes()).and_then(|_| out.flush());
                let _ = err.write_all(summary.as_bytes());
            }
            None if self.status == Status::Error => {
                let _ = err.write_all(summary.as_bytes());
            }
            None => {
                let _ = out.write_all(summary.as_bytes());
            }
        }
    }

    fn text_summary(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        };
        let mut out = format!("{}: {status}\n", self.command);
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                out.push_str(&format!("{k}: {}\n", scalar_text(v)));
            }
        }
        for c in &self.checks {
            out.push_str(if c.ok { "PASS " } else { "FAIL " });
            out.push_str(&c.name);
            if let Some(w) = &c.witness {
                out.push_str(&format!(" witness {w:?}"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!(" ({n})"));
            }
            out.push('\n');
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error[{}]: {}\n", e.kind, e.message));
        }
        out
    }
}

const TEXT_VALUE_LIMIT: usize = 160;

fn scalar_text(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.chars().count() > TEXT_VALUE_LIMIT {
        "(omitted, see --format json)".into()
    } else {
        s
    }
}
