//! Typed access to one section's entries with error accumulation.

use std::collections::BTreeMap;

use super::error::{ParseError, ParseErrorKind};
use super::kv::{Entry, Section, Value};

pub(crate) struct SectionReader<'a> {
    section: &'a Section,
    entries: BTreeMap<&'a str, &'a Entry>,
    known: &'static [&'static str],
    pub errors: Vec<ParseError>,
}

impl<'a> SectionReader<'a> {
    /// `known` lists the accepted keys; keys matching `prefix.` patterns are
    /// checked by the caller through [`SectionReader::prefixed`].
    pub fn new(section: &'a Section, known: &'static [&'static str], prefixes: &[&str]) -> Self {
        let mut entries = BTreeMap::new();
        let mut errors = Vec::new();
        for entry in &section.entries {
            let key = entry.key.as_str();
            let prefixed = prefixes.iter().any(|p| {
                key.strip_prefix(p)
                    .and_then(|rest| rest.strip_prefix('.'))
                    .is_some_and(|rest| !rest.is_empty())
            });
            if !known.contains(&key) && !prefixed && !known.contains(&"*") {
                errors.push(ParseError::new(
                    entry.key_span,
                    ParseErrorKind::UnknownKey,
                    format!(
                        "unknown key `{key}` in [{}], expected one of: {}",
                        section.name,
                        known.join(", ")
                    ),
                ));
                continue;
            }
            if entries.insert(key, entry).is_some() {
                errors.push(ParseError::new(
                    entry.key_span,
                    ParseErrorKind::DuplicateKey,
                    format!("duplicate key `{key}` in [{}]", section.name),
                ));
            }
        }
        SectionReader {
            section,
            entries,
            known,
            errors,
        }
    }

    pub fn missing(&mut self, key: &str) {
        self.errors.push(ParseError::new(
            self.section.span,
            ParseErrorKind::MissingKey,
            format!("[{}] is missing required key `{key}`", self.section.name),
        ));
    }

    fn bad(&mut self, entry: &Entry, msg: String) {
        self.errors.push(ParseError::new(
            entry.value_span,
            ParseErrorKind::BadValue,
            format!("key `{}`: {msg}", entry.key),
        ));
    }

    pub fn entry(&self, key: &str) -> Option<&'a Entry> {
        debug_assert!(self.known.contains(&key) || self.known.contains(&"*"));
        self.entries.get(key).copied()
    }

    /// Entries whose key is `prefix.<name>`, as `(name, entry)`.
    pub fn prefixed(&self, prefix: &str) -> Vec<(&'a str, &'a Entry)> {
        self.entries
            .iter()
            .filter_map(|(k, e)| {
                k.strip_prefix(prefix)
                    .and_then(|rest| rest.strip_prefix('.'))
                    .map(|name| (name, *e))
            })
            .collect()
    }

    /// All entries, sorted by key.
    pub fn all(&self) -> Vec<&'a Entry> {
        self.entries.values().copied().collect()
    }

    pub fn string(&mut self, key: &str, required: bool) -> Option<String> {
        let entry = match self.entry(key) {
            Some(e) => e,
            None => {
                if required {
                    self.missing(key);
                }
                return None;
            }
        };
        match &entry.value {
            Value::Str(s) => Some(s.clone()),
            other => {
                self.bad(entry, format!("expected a quoted string, found {}", other.describe()));
                None
            }
        }
    }

    pub fn string_value(&mut self, entry: &Entry) -> Option<String> {
        match &entry.value {
            Value::Str(s) => Some(s.clone()),
            other => {
                self.bad(entry, format!("expected a quoted string, found {}", other.describe()));
                None
            }
        }
    }

    pub fn boolean(&mut self, key: &str, default: bool) -> bool {
        let Some(entry) = self.entry(key) else {
            return default;
        };
        match entry.value {
            Value::Bool(b) => b,
            ref other => {
                self.bad(entry, format!("expected true or false, found {}", other.describe()));
                default
            }
        }
    }

    /// A closed-enum token; on a bad token the legal variants are listed.
    pub fn token<T: Copy>(
        &mut self,
        key: &str,
        required: bool,
        parse: fn(&str) -> Option<T>,
        legal: &[&str],
    ) -> Option<T> {
        let entry = match self.entry(key) {
            Some(e) => e,
            None => {
                if required {
                    self.missing(key);
                }
                return None;
            }
        };
        self.token_value(entry, parse, legal)
    }

    pub fn token_value<T: Copy>(
        &mut self,
        entry: &Entry,
        parse: fn(&str) -> Option<T>,
        legal: &[&str],
    ) -> Option<T> {
        match &entry.value {
            Value::Token(t) => match parse(t) {
                Some(v) => Some(v),
                None => {
                    self.bad(entry, format!("unknown value `{t}`, expected one of {{{}}}", legal.join(", ")));
                    None
                }
            },
            other => {
                self.bad(
                    entry,
                    format!("expected one of {{{}}}, found {}", legal.join(", "), other.describe()),
                );
                None
            }
        }
    }

    pub fn list(&mut self, key: &str, required: bool) -> Option<Vec<String>> {
        let entry = match self.entry(key) {
            Some(e) => e,
            None => {
                if required {
                    self.missing(key);
                }
                return None;
            }
        };
        match &entry.value {
            Value::List(items) => Some(items.clone()),
            other => {
                self.bad(entry, format!("expected a bracketed list, found {}", other.describe()));
                None
            }
        }
    }

    /// A list of closed-enum tokens. Bad items are all reported.
    pub fn token_list<T: Copy + Ord>(
        &mut self,
        key: &str,
        parse: fn(&str) -> Option<T>,
        legal: &[&str],
    ) -> Option<Vec<T>> {
        let entry = match self.entry(key) {
            Some(e) => e,
            None => {
                self.missing(key);
                return None;
            }
        };
        let Value::List(items) = &entry.value else {
            self.bad(entry, format!("expected a bracketed list, found {}", entry.value.describe()));
            return None;
        };
        let mut out = Vec::new();
        let mut ok = true;
        for item in items {
            match parse(item) {
                Some(v) => out.push(v),
                None => {
                    ok = false;
                    self.bad(
                        entry,
                        format!("unknown value `{item}`, expected one of {{{}}}", legal.join(", ")),
                    );
                }
            }
        }
        if ok && out.is_empty() {
            self.bad(entry, "list must be nonempty".into());
            return None;
        }
        ok.then_some(out)
    }

    pub fn number(&mut self, entry: &Entry) -> Option<f64> {
        match entry.value {
            Value::Number(x) => Some(x),
            ref other => {
                self.bad(entry, format!("expected a number, found {}", other.describe()));
                None
            }
        }
    }

    pub fn reject(&mut self, entry: &Entry, msg: impl Into<String>) {
        self.bad(entry, msg.into());
    }

    pub fn finish(self) -> Vec<ParseError> {
        self.errors
    }
}
