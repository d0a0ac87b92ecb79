//! The JSON report every command emits, and the error type that maps core
//! failures onto exit codes.

use std::fmt::Write as _;

use ncproj_core::Error;
use serde_json::{json, Map, Value};

/// Exit code for a failed computation.
pub const EXIT_COMPUTATION: i32 = 1;
/// Exit code for unreadable input or bad usage.
pub const EXIT_USAGE: i32 = 2;

/// What a successful command hands back before it is wrapped in a report.
#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub certificate: Value,
    /// Lines for `--text`; when empty the result is flattened instead.
    pub text: Vec<String>,
    /// Set when the command ran but its answer is a failure (a failed suite).
    pub failed: bool,
}

impl Outcome {
    pub fn new(result: Value) -> Self {
        Outcome { result, certificate: Value::Null, ..Outcome::default() }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn certificate(mut self, value: Value) -> Self {
        self.certificate = value;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, kind: "Usage".into(), message: message.into() }
    }

    pub fn io(path: &str, err: std::io::Error) -> Self {
        CliError { code: EXIT_USAGE, kind: "Io".into(), message: format!("{path}: {err}") }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::RowNotHomogeneous { .. }
            | Error::InvalidArity(_)
            | Error::LetterOutOfRange { .. } => EXIT_USAGE,
            _ => EXIT_COMPUTATION,
        };
        let debug = format!("{e:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        CliError { code, kind, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// `{command, config, inputs, result, certificate}` on success, `{command, config, error}` otherwise.
pub fn render_json(command: &str, config: &Value, outcome: &CliResult<Outcome>, timing_us: Option<u128>) -> String {
    let mut report = Map::new();
    report.insert("command".into(), json!(command));
    report.insert("config".into(), config.clone());
    match outcome {
        Ok(o) => {
            report.insert("inputs".into(), Value::Object(o.inputs.clone()));
            report.insert("result".into(), o.result.clone());
            if !o.certificate.is_null() {
                report.insert("certificate".into(), o.certificate.clone());
            }
        }
        Err(e) => {
            report.insert("error".into(), json!({ "kind": e.kind, "message": e.message, "exit_code": e.code }));
        }
    }
    if let Some(us) = timing_us {
        report.insert("timings".into(), json!({ "elapsed_us": us as u64 }));
    }
    serde_json::to_string_pretty(&Value::Object(report)).expect("plain data")
}

pub fn render_text(command: &str, outcome: &CliResult<Outcome>, timing_us: Option<u128>) -> String {
    let mut out = String::new();
    match outcome {
        Ok(o) if !o.text.is_empty() => {
            for line in &o.text {
                let _ = writeln!(out, "{line}");
            }
        }
        Ok(o) => {
            let _ = writeln!(out, "{command}:");
            flatten(&o.result, "", &mut out);
        }
        Err(e) => {
            let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        }
    }
    if let Some(us) = timing_us {
        let _ = writeln!(out, "elapsed: {us} us");
    }
    out.trim_end().to_string()
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(x, &key, out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "  {prefix}: {s}");
        }
        other => {
            let _ = writeln!(out, "  {prefix}: {other}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_errors_map_to_exit_codes() {
        let parse: CliError = Error::Parse { line: 3, column: 7, message: "bad".into() }.into();
        assert_eq!(parse.code, EXIT_USAGE);
        assert_eq!(parse.kind, "Parse");
        assert!(parse.message.contains("line 3, column 7"));
        let comp: CliError = Error::NotExpressibleAtTwist { twist: 0 }.into();
        assert_eq!((comp.code, comp.kind.as_str()), (EXIT_COMPUTATION, "NotExpressibleAtTwist"));
        let unit: CliError = Error::NotIdempotent.into();
        assert_eq!(unit.kind, "NotIdempotent");
    }

    #[test]
    fn text_flattens_nested_results() {
        let o = Outcome::new(json!({ "profile": { "i0": 1, "t": [1, 2] } }));
        let text = render_text("profile", &Ok(o), None);
        assert_eq!(text, "profile:\n  profile.i0: 1\n  profile.t: [1,2]");
    }

    #[test]
    fn errors_render_without_a_result() {
        let e: CliResult<Outcome> = Err(CliError::usage("no"));
        let s = render_json("k0", &json!({}), &e, None);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["error"]["exit_code"], 2);
        assert!(v.get("result").is_none());
    }
}
