//! Command implementations for the `arxai` binary and the HTTP service.
//!
//! Every command returns an [`Output`] instead of printing, so tests can
//! check exit codes and streams without spawning a process.

pub mod api;

use std::fmt::Write as _;
use std::path::Path;

use arxai_core::engine::{whatif_diff, WhatIfDiff};
use arxai_core::format::{load_corpus, parse_scenario, read_corpus_dir, ParseError};
use arxai_core::golden::run_corpus;
use arxai_core::model::{validate_scenario, Scenario};
use arxai_core::report::{build_report, human_explanation, human_report};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
/// Corpus ran but some scenario failed its golden.
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable naming the default corpus directory.
pub const CORPUS_ENV: &str = "ARXAI_CORPUS";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Output { code, stdout: String::new(), stderr }
    }
}

/// Pretty JSON plus trailing newline; the one serialized form shared by the
/// CLI and the API.
pub fn canonical_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

/// A scenario that could not be used, in either text or JSON form.
#[derive(Debug, Clone, PartialEq)]
pub enum InputError {
    Parse(Vec<ParseError>),
    Invalid(Vec<String>),
}

impl InputError {
    pub fn to_value(&self) -> Value {
        match self {
            InputError::Parse(errors) => json!({ "error": "parse_error", "errors": errors }),
            InputError::Invalid(violations) => json!({ "error": "invalid_scenario", "violations": violations }),
        }
    }

    fn human(&self, origin: &str) -> String {
        let mut out = String::new();
        match self {
            InputError::Parse(errors) => {
                for e in errors {
                    let _ = writeln!(out, "{origin}:{e}");
                }
            }
            InputError::Invalid(violations) => {
                for v in violations {
                    let _ = writeln!(out, "{origin}: invalid scenario: {v}");
                }
            }
        }
        out
    }
}

/// Parses and validates `.xas` text.
pub fn scenario_from_text(text: &str) -> Result<Scenario, InputError> {
    let s = parse_scenario(text).map_err(InputError::Parse)?;
    check(s)
}

pub(crate) fn check(s: Scenario) -> Result<Scenario, InputError> {
    let violations = validate_scenario(&s);
    if violations.is_empty() {
        Ok(s)
    } else {
        Err(InputError::Invalid(violations))
    }
}

fn load(path: &Path, json_errors: bool) -> Result<Scenario, Output> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Output::fail(EXIT_IO, format!("{}: {e}\n", path.display())))?;
    scenario_from_text(&text).map_err(|e| {
        let stderr = if json_errors {
            canonical_json(&e.to_value())
        } else {
            e.human(&path.display().to_string())
        };
        Output::fail(EXIT_INPUT, stderr)
    })
}

pub fn cmd_recommend(path: &Path, json: bool) -> Output {
    let s = match load(path, json) {
        Ok(s) => s,
        Err(out) => return out,
    };
    match build_report(&s) {
        Ok(r) if json => Output::ok(r.to_json()),
        Ok(r) => Output::ok(human_report(&r)),
        Err(e) => Output::fail(EXIT_INPUT, format!("{}: {e}\n", path.display())),
    }
}

pub fn cmd_validate(path: &Path) -> Output {
    match load(path, false) {
        Ok(s) => Output::ok(format!("ok: {}\n", s.id)),
        Err(out) => out,
    }
}

pub fn cmd_render(path: &Path) -> Output {
    let s = match load(path, false) {
        Ok(s) => s,
        Err(out) => return out,
    };
    match build_report(&s) {
        Ok(r) => match (r.rendered, r.render_error) {
            (Some(x), _) => Output::ok(human_explanation(&x)),
            (None, e) => Output::fail(EXIT_INPUT, format!("{}: {}\n", path.display(), e.unwrap_or_default())),
        },
        Err(e) => Output::fail(EXIT_INPUT, format!("{}: {e}\n", path.display())),
    }
}

pub fn cmd_corpus_run(dir: &Path, json: bool) -> Output {
    let files = match read_corpus_dir(dir) {
        Ok(f) => f,
        Err(e) => return Output::fail(EXIT_IO, format!("{}: {e}\n", dir.display())),
    };
    let entries = match load_corpus(&files) {
        Ok(c) => c,
        Err(errors) => {
            let mut stderr = String::new();
            for e in errors {
                let _ = writeln!(stderr, "{e}");
            }
            return Output::fail(EXIT_INPUT, stderr);
        }
    };
    let report = run_corpus(&entries);
    let stdout = if json {
        canonical_json(&report)
    } else {
        report.summary_lines().join("\n") + "\n"
    };
    Output {
        code: if report.all_passed() { EXIT_OK } else { EXIT_FAILURES },
        stdout,
        stderr: String::new(),
    }
}

pub fn human_diff(d: &WhatIfDiff) -> String {
    if d.is_empty() {
        return "no differences\n".to_string();
    }
    let mut out = format!("{} -> {}\n", d.a, d.b);
    for f in &d.differences {
        let factors: Vec<&str> = f.attribution.iter().map(|x| x.token()).collect();
        let _ = writeln!(out, "{}: {} -> {}", f.field, f.before, f.after);
        if factors.is_empty() {
            out.push_str("  attribution: none single-factor\n");
        } else {
            let _ = writeln!(out, "  attribution: {}", factors.join(", "));
        }
    }
    out
}

pub fn cmd_diff(a: &Path, b: &Path, json: bool) -> Output {
    let sa = match load(a, json) {
        Ok(s) => s,
        Err(out) => return out,
    };
    let sb = match load(b, json) {
        Ok(s) => s,
        Err(out) => return out,
    };
    match whatif_diff(&sa, &sb) {
        Ok(d) if json => Output::ok(canonical_json(&d)),
        Ok(d) => Output::ok(human_diff(&d)),
        Err(e) => Output::fail(EXIT_INPUT, format!("{e}\n")),
    }
}
