//! Template pack files: repeated `[template]` sections in the `.xas` syntax.
//!
//! ```text
//! [template]
//! content_type = why_why_not
//! domain = "plant"
//! body = "The plant has abnormal spots on the leaves, \
//!         which indicates fungi or bacteria infection."
//! concise = "It has abnormal spots on the leaves, which indicate fungi or bacteria infection."
//! anchor = "plant leaves"
//! graphic = "leaf_spot_circles"
//! graphic_class = icon
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{ExplanationTemplate, Graphic, TemplateRegistry};
use crate::engine::GraphicComplexity;
use crate::format::kv::{self, quote};
use crate::format::reader::SectionReader;
use crate::format::{ParseError, ParseErrorKind, SourceSpan};
use crate::model::ContentType;

const TEMPLATE_KEYS: &[&str] = &[
    "content_type",
    "domain",
    "body",
    "concise",
    "anchor",
    "graphic",
    "graphic_class",
];

pub fn parse_pack(text: &str) -> Result<TemplateRegistry, Vec<ParseError>> {
    let (doc, mut errors) = kv::parse_document(text);
    let mut registry = TemplateRegistry::new();
    let mut seen: BTreeMap<(ContentType, String), SourceSpan> = BTreeMap::new();

    for section in &doc.sections {
        if section.name != "template" {
            errors.push(ParseError::new(
                section.span,
                ParseErrorKind::UnknownSection,
                format!("unknown section [{}], expected [template]", section.name),
            ));
            continue;
        }
        let mut r = SectionReader::new(section, TEMPLATE_KEYS, &[]);
        let content_type = r.token("content_type", true, ContentType::from_token, &ContentType::tokens());
        let domain = r.string("domain", true);
        let body = r.string("body", true);
        let concise = r.string("concise", false);
        let anchor = r.string("anchor", false);
        let graphic = r.string("graphic", false);
        let class = r.token(
            "graphic_class",
            graphic.is_some(),
            GraphicComplexity::from_token,
            &GraphicComplexity::tokens(),
        );
        if graphic.is_none() {
            if let Some(e) = r.entry("graphic_class") {
                r.reject(e, "graphic_class without graphic");
            }
        }

        let (Some(content_type), Some(domain), Some(body)) = (content_type, domain, body) else {
            errors.extend(r.finish());
            continue;
        };
        let t = ExplanationTemplate {
            content_type,
            domain: domain.clone(),
            body,
            concise,
            anchor,
            graphic: graphic.zip(class).map(|(asset_id, complexity)| Graphic { asset_id, complexity }),
        };
        if let Err(e) = t.check() {
            errors.push(ParseError::new(section.span, ParseErrorKind::BadValue, e.to_string()));
        }
        if let Some(first) = seen.insert((content_type, domain.clone()), section.span) {
            errors.push(ParseError::new(
                section.span,
                ParseErrorKind::DuplicateKey,
                format!("template ({content_type}, \"{domain}\") already defined at line {}", first.line),
            ));
        }
        errors.extend(r.finish());
        if errors.is_empty() {
            registry.register(t).expect("checked above");
        }
    }

    if errors.is_empty() {
        Ok(registry)
    } else {
        errors.sort_by_key(|e| e.span);
        Err(errors)
    }
}

/// Writes a registry back out, grouped by domain.
pub fn serialize_pack(registry: &TemplateRegistry) -> String {
    let mut items: Vec<&ExplanationTemplate> = registry.iter().collect();
    items.sort_by(|a, b| (&a.domain, a.content_type).cmp(&(&b.domain, b.content_type)));
    let mut out = String::new();
    for (i, t) in items.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str("[template]\n");
        let _ = writeln!(out, "content_type = {}", t.content_type);
        let _ = writeln!(out, "domain = {}", quote(&t.domain));
        let _ = writeln!(out, "body = {}", quote(&t.body));
        if let Some(c) = &t.concise {
            let _ = writeln!(out, "concise = {}", quote(c));
        }
        if let Some(a) = &t.anchor {
            let _ = writeln!(out, "anchor = {}", quote(a));
        }
        if let Some(g) = &t.graphic {
            let _ = writeln!(out, "graphic = {}", quote(&g.asset_id));
            let _ = writeln!(out, "graphic_class = {}", g.complexity);
        }
    }
    out
}
