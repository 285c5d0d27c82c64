use std::fmt;

use serde::{Deserialize, Serialize};

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize) -> Self {
        SourceSpan {
            line: line.max(1),
            column: column.max(1),
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseErrorKind {
    UnknownSection,
    UnknownKey,
    BadValue,
    DuplicateKey,
    MissingSection,
    MissingKey,
}

impl ParseErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorKind::UnknownSection => "unknown_section",
            ParseErrorKind::UnknownKey => "unknown_key",
            ParseErrorKind::BadValue => "bad_value",
            ParseErrorKind::DuplicateKey => "duplicate_key",
            ParseErrorKind::MissingSection => "missing_section",
            ParseErrorKind::MissingKey => "missing_key",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{span}: {}: {message}", kind.as_str())]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub fn new(span: SourceSpan, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        let message = message.into();
        debug_assert!(!message.is_empty());
        ParseError {
            span,
            kind,
            message,
        }
    }
}
