//! Explanation templates and the renderer that fills them from scenario facts.

mod pack;
mod render;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::engine::{FragmentTraits, GraphicComplexity};
use crate::model::{ContentType, GENERIC_DOMAIN};

pub use pack::{parse_pack, serialize_pack};
pub use render::{render, RenderError, RenderedExplanation, RenderedSection, CONCISE_ORDER};

const BUILTIN_PACK: &str = include_str!("../../assets/default.xat");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graphic {
    pub asset_id: String,
    pub complexity: GraphicComplexity,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TemplateError {
    #[error("unclosed `{{` at byte {0}")]
    Unclosed(usize),
    #[error("unmatched `}}` at byte {0}")]
    Unmatched(usize),
    #[error("bad placeholder name `{name}` at byte {at}")]
    BadName { name: String, at: usize },
    #[error("anchor `{0}` is not case-folded")]
    AnchorNotFolded(String),
    #[error("domain must be nonempty")]
    EmptyDomain,
}

/// One piece of the body text: literal or `{placeholder}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Piece<'a> {
    Text(&'a str),
    Slot(&'a str),
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-')
}

/// Splits a body into text and slots. Braces have no escape.
pub(crate) fn pieces(body: &str) -> Result<Vec<Piece<'_>>, TemplateError> {
    let mut out = Vec::new();
    let mut rest = 0;
    let bytes = body.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'{' => {
                let close = body[i + 1..]
                    .find(['{', '}'])
                    .filter(|off| bytes[i + 1 + off] == b'}')
                    .ok_or(TemplateError::Unclosed(i))?;
                let name = &body[i + 1..i + 1 + close];
                if !is_name(name) {
                    return Err(TemplateError::BadName {
                        name: name.to_string(),
                        at: i,
                    });
                }
                if rest < i {
                    out.push(Piece::Text(&body[rest..i]));
                }
                out.push(Piece::Slot(name));
                i += close + 2;
                rest = i;
            }
            b'}' => return Err(TemplateError::Unmatched(i)),
            _ => i += 1,
        }
    }
    if rest < body.len() {
        out.push(Piece::Text(&body[rest..]));
    }
    Ok(out)
}

/// Parameterized text for one content type in one domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplanationTemplate {
    pub content_type: ContentType,
    pub domain: String,
    /// Detailed-view text.
    pub body: String,
    /// Shorter phrasing for the merged concise view; `body` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concise: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graphic: Option<Graphic>,
}

impl ExplanationTemplate {
    pub fn new(content_type: ContentType, domain: &str, body: &str) -> Result<Self, TemplateError> {
        let t = ExplanationTemplate {
            content_type,
            domain: domain.to_string(),
            body: body.to_string(),
            concise: None,
            anchor: None,
            graphic: None,
        };
        t.check()?;
        Ok(t)
    }

    pub fn with_concise(mut self, concise: &str) -> Result<Self, TemplateError> {
        self.concise = Some(concise.to_string());
        self.check()?;
        Ok(self)
    }

    pub fn with_anchor(mut self, anchor: &str) -> Result<Self, TemplateError> {
        self.anchor = Some(anchor.to_string());
        self.check()?;
        Ok(self)
    }

    pub fn with_graphic(mut self, asset_id: &str, complexity: GraphicComplexity) -> Self {
        self.graphic = Some(Graphic {
            asset_id: asset_id.to_string(),
            complexity,
        });
        self
    }

    pub fn check(&self) -> Result<(), TemplateError> {
        if self.domain.trim().is_empty() {
            return Err(TemplateError::EmptyDomain);
        }
        pieces(&self.body)?;
        if let Some(c) = &self.concise {
            pieces(c)?;
        }
        if let Some(a) = &self.anchor {
            if *a != crate::model::fold_label(a) || a.is_empty() {
                return Err(TemplateError::AnchorNotFolded(a.clone()));
            }
        }
        Ok(())
    }

    pub fn concise_body(&self) -> &str {
        self.concise.as_deref().unwrap_or(&self.body)
    }

    /// Placeholder names of body and concise text, sorted and deduplicated.
    pub fn placeholders(&self) -> Vec<String> {
        let mut names: Vec<String> = [Some(self.body.as_str()), self.concise.as_deref()]
            .into_iter()
            .flatten()
            .flat_map(|b| pieces(b).unwrap_or_default())
            .filter_map(|p| match p {
                Piece::Slot(n) => Some(n.to_string()),
                Piece::Text(_) => None,
            })
            .collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn traits(&self) -> FragmentTraits {
        FragmentTraits {
            anchor: self.anchor.clone(),
            graphic: self.graphic.as_ref().map(|g| g.complexity),
        }
    }
}

/// Templates keyed by (content type, domain), with fallback to `generic`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TemplateRegistry {
    templates: BTreeMap<(ContentType, String), ExplanationTemplate>,
}

impl TemplateRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The shipped template pack.
    pub fn builtin() -> &'static TemplateRegistry {
        static REGISTRY: OnceLock<TemplateRegistry> = OnceLock::new();
        REGISTRY.get_or_init(|| {
            parse_pack(BUILTIN_PACK).unwrap_or_else(|errs| {
                let msgs: Vec<String> = errs.iter().map(ToString::to_string).collect();
                panic!("built-in template pack is malformed:\n{}", msgs.join("\n"))
            })
        })
    }

    /// Adds `t`, returning the template it replaced.
    pub fn register(&mut self, t: ExplanationTemplate) -> Result<Option<ExplanationTemplate>, TemplateError> {
        t.check()?;
        Ok(self.templates.insert((t.content_type, t.domain.clone()), t))
    }

    pub fn get(&self, content_type: ContentType, domain: &str) -> Option<&ExplanationTemplate> {
        self.templates.get(&(content_type, domain.to_string()))
    }

    /// Exact domain first, then `generic`.
    pub fn lookup(&self, content_type: ContentType, domain: &str) -> Option<&ExplanationTemplate> {
        self.get(content_type, domain)
            .or_else(|| self.get(content_type, GENERIC_DOMAIN))
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExplanationTemplate> {
        self.templates.values()
    }

    pub fn domains(&self) -> Vec<&str> {
        let mut d: Vec<&str> = self.templates.keys().map(|(_, d)| d.as_str()).collect();
        d.sort();
        d.dedup();
        d
    }

    /// Anchor/graphic declarations per content type, as the paradigm decision
    /// sees them for `domain`.
    pub fn fragment_traits(&self, domain: &str) -> BTreeMap<ContentType, FragmentTraits> {
        ContentType::ALL
            .iter()
            .filter_map(|t| self.lookup(*t, domain).map(|tpl| (*t, tpl.traits())))
            .collect()
    }
}
