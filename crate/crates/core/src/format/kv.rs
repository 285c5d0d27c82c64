//! Line-oriented sectioned key-value text, shared by `.xas` scenarios and
//! template packs.
//!
//! ```text
//! # comment
//! [section]
//! key = value          # token, "string", 0.5, true, ["a", "b"]
//! body = "long text \
//!         continued"
//! ```
//!
//! A trailing backslash joins a line with the next one (leading whitespace of
//! the continuation is dropped). CRLF and LF are both accepted.

use super::error::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Token(String),
    Str(String),
    Number(f64),
    Bool(bool),
    List(Vec<String>),
}

impl Value {
    pub fn describe(&self) -> &'static str {
        match self {
            Value::Token(_) => "a bare token",
            Value::Str(_) => "a quoted string",
            Value::Number(_) => "a number",
            Value::Bool(_) => "a boolean",
            Value::List(_) => "a list",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub key: String,
    pub key_span: SourceSpan,
    pub value: Value,
    pub value_span: SourceSpan,
}

#[derive(Debug, Clone)]
pub struct Section {
    pub name: String,
    pub span: SourceSpan,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub sections: Vec<Section>,
}

struct LogicalLine {
    line: usize,
    text: String,
}

fn logical_lines(text: &str) -> Vec<LogicalLine> {
    let mut out = Vec::new();
    let mut pending: Option<LogicalLine> = None;
    for (idx, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let (piece, continues) = match raw.trim_end().strip_suffix('\\') {
            Some(head) => (head, true),
            None => (raw, false),
        };
        match pending.as_mut() {
            Some(acc) => acc.text.push_str(piece.trim_start()),
            None => {
                pending = Some(LogicalLine {
                    line: idx + 1,
                    text: piece.to_string(),
                })
            }
        }
        if !continues {
            out.extend(pending.take());
        }
    }
    out.extend(pending);
    out
}

/// Byte index of the first `#` outside a quoted string.
fn comment_start(line: &str) -> Option<usize> {
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        if in_str {
            match c {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_str = false,
                _ => {}
            }
        } else if c == '"' {
            in_str = true;
        } else if c == '#' {
            return Some(i);
        }
    }
    None
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn is_key_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-')
}

/// Splits `text` into sections and entries, collecting every lexical error.
pub fn parse_document(text: &str) -> (Document, Vec<ParseError>) {
    let mut doc = Document::default();
    let mut errors = Vec::new();
    let mut current: Option<Section> = None;

    for LogicalLine { line, text } in logical_lines(text) {
        let code = match comment_start(&text) {
            Some(i) => &text[..i],
            None => &text[..],
        };
        let trimmed = code.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = code.len() - code.trim_start().len();
        let col = column_of(&text, indent);
        let span = SourceSpan::new(line, col);

        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                errors.push(ParseError::new(
                    span,
                    ParseErrorKind::BadValue,
                    "section header is missing its closing `]`",
                ));
                continue;
            };
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_lowercase() || c == '_') {
                errors.push(ParseError::new(
                    span,
                    ParseErrorKind::UnknownSection,
                    format!("malformed section name `{name}`"),
                ));
                continue;
            }
            doc.sections.extend(current.take());
            current = Some(Section {
                name: name.to_string(),
                span,
                entries: Vec::new(),
            });
            continue;
        }

        let Some(eq) = trimmed.find('=') else {
            errors.push(ParseError::new(
                span,
                ParseErrorKind::BadValue,
                format!("expected `key = value`, found `{trimmed}`"),
            ));
            continue;
        };
        let key = trimmed[..eq].trim();
        if key.is_empty() || !key.chars().all(is_key_char) {
            errors.push(ParseError::new(
                span,
                ParseErrorKind::UnknownKey,
                format!("malformed key `{key}`"),
            ));
            continue;
        }
        let raw_value = trimmed[eq + 1..].trim();
        let value_offset = indent + eq + 1 + (trimmed[eq + 1..].len() - trimmed[eq + 1..].trim_start().len());
        let value_span = SourceSpan::new(line, column_of(&text, value_offset.min(text.len())));

        let value = match parse_value(raw_value) {
            Ok(v) => v,
            Err(msg) => {
                errors.push(ParseError::new(
                    value_span,
                    ParseErrorKind::BadValue,
                    format!("key `{key}`: {msg}"),
                ));
                continue;
            }
        };
        let Some(section) = current.as_mut() else {
            errors.push(ParseError::new(
                span,
                ParseErrorKind::UnknownSection,
                format!("key `{key}` appears before any section header"),
            ));
            continue;
        };
        section.entries.push(Entry {
            key: key.to_string(),
            key_span: span,
            value,
            value_span,
        });
    }
    doc.sections.extend(current);
    (doc, errors)
}

fn parse_value(raw: &str) -> Result<Value, String> {
    if raw.is_empty() {
        return Err("missing value".into());
    }
    if raw.starts_with('"') {
        let (s, rest) = parse_string(raw)?;
        if !rest.trim().is_empty() {
            return Err(format!("unexpected text after string: `{}`", rest.trim()));
        }
        return Ok(Value::Str(s));
    }
    if let Some(inner) = raw.strip_prefix('[') {
        return parse_list(inner).map(Value::List);
    }
    match raw {
        "true" => return Ok(Value::Bool(true)),
        "false" => return Ok(Value::Bool(false)),
        _ => {}
    }
    if looks_numeric(raw) {
        return raw
            .parse::<f64>()
            .map(Value::Number)
            .map_err(|_| format!("malformed number `{raw}`"));
    }
    if raw.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Ok(Value::Token(raw.to_string()));
    }
    Err(format!("unrecognized value `{raw}`"))
}

fn looks_numeric(raw: &str) -> bool {
    let body = raw.strip_prefix('-').unwrap_or(raw);
    let mut parts = body.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next();
    !int.is_empty()
        && int.chars().all(|c| c.is_ascii_digit())
        && frac.is_none_or(|f| !f.is_empty() && f.chars().all(|c| c.is_ascii_digit()))
}

/// Parses a leading quoted string, returning it and the remaining input.
fn parse_string(raw: &str) -> Result<(String, &str), String> {
    let mut out = String::new();
    let mut chars = raw.char_indices().skip(1);
    while let Some((i, c)) = chars.next() {
        match c {
            '"' => return Ok((out, &raw[i + 1..])),
            '\\' => match chars.next() {
                Some((_, '"')) => out.push('"'),
                Some((_, '\\')) => out.push('\\'),
                Some((_, 'n')) => out.push('\n'),
                Some((_, 't')) => out.push('\t'),
                Some((_, other)) => return Err(format!("unknown escape `\\{other}`")),
                None => break,
            },
            _ => out.push(c),
        }
    }
    Err("unterminated string".into())
}

fn parse_list(mut rest: &str) -> Result<Vec<String>, String> {
    let mut items = Vec::new();
    loop {
        rest = rest.trim_start();
        if let Some(after) = rest.strip_prefix(']') {
            if !after.trim().is_empty() {
                return Err(format!("unexpected text after list: `{}`", after.trim()));
            }
            return Ok(items);
        }
        if rest.is_empty() {
            return Err("unterminated list".into());
        }
        if !items.is_empty() {
            rest = rest
                .strip_prefix(',')
                .ok_or("expected `,` between list items")?
                .trim_start();
            // trailing comma
            if rest.starts_with(']') {
                continue;
            }
        }
        if rest.starts_with('"') {
            let (s, tail) = parse_string(rest)?;
            items.push(s);
            rest = tail;
        } else {
            let end = rest
                .find(|c: char| c == ',' || c == ']' || c.is_whitespace())
                .unwrap_or(rest.len());
            let token = &rest[..end];
            if token.is_empty() || !token.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(format!("malformed list item `{token}`"));
            }
            items.push(token.to_string());
            rest = &rest[end..];
        }
    }
}

/// Quotes and escapes a string value.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn quote_list<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    let quoted: Vec<String> = items.into_iter().map(quote).collect();
    format!("[{}]", quoted.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_of_each_kind() {
        assert_eq!(parse_value("low").unwrap(), Value::Token("low".into()));
        assert_eq!(parse_value("\"a # b\"").unwrap(), Value::Str("a # b".into()));
        assert_eq!(parse_value("0.71").unwrap(), Value::Number(0.71));
        assert_eq!(parse_value("1").unwrap(), Value::Number(1.0));
        assert_eq!(parse_value("true").unwrap(), Value::Bool(true));
        assert_eq!(
            parse_value(r#"["a", b ,"c d",]"#).unwrap(),
            Value::List(vec!["a".into(), "b".into(), "c d".into()])
        );
        assert_eq!(parse_value("[]").unwrap(), Value::List(vec![]));
        assert!(parse_value("\"open").is_err());
        assert!(parse_value("[\"a\" \"b\"]").is_err());
        assert!(parse_value("1.").is_err());
        assert!(parse_value("two words").is_err());
    }

    #[test]
    fn comments_respect_quotes() {
        let (doc, errs) = parse_document("[s]\nk = \"x # y\" # trailing\n# whole line\n");
        assert!(errs.is_empty());
        assert_eq!(doc.sections[0].entries[0].value, Value::Str("x # y".into()));
    }

    #[test]
    fn crlf_and_continuation() {
        let text = "[s]\r\nbody = \"one \\\r\n      two\"\r\nother = 1\r\n";
        let (doc, errs) = parse_document(text);
        assert!(errs.is_empty(), "{errs:?}");
        let entries = &doc.sections[0].entries;
        assert_eq!(entries[0].value, Value::Str("one two".into()));
        assert_eq!(entries[1].key_span, SourceSpan::new(4, 1));
    }

    #[test]
    fn spans_point_at_values() {
        let (_, errs) = parse_document("[s]\n  load = ext-reme\n");
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].span, SourceSpan::new(2, 10));
        assert_eq!(errs[0].kind, ParseErrorKind::BadValue);
    }

    #[test]
    fn errors_recover_per_line() {
        let (doc, errs) = parse_document("orphan = 1\n[s]\nnoequals\nk = \"open\nok = 2\n");
        assert_eq!(errs.len(), 3, "{errs:?}");
        assert_eq!(doc.sections[0].entries.len(), 1);
    }

    #[test]
    fn quote_round_trips() {
        let s = "say \"hi\"\\ \n\tnow";
        let quoted = quote(s);
        let (back, rest) = parse_string(&quoted).unwrap();
        assert_eq!(back, s);
        assert!(rest.is_empty());
    }
}
