use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{pieces, Graphic, Piece, TemplateRegistry};
use crate::engine::{DetailPlan, Format, GraphicComplexity, Paradigm, Pattern};
use crate::model::{ContentType, Scenario};

/// Order of sentences in the merged concise text: what the system looked at
/// and how it works read before the conclusion drawn from it.
pub const CONCISE_ORDER: [ContentType; 7] = [
    ContentType::InputOutput,
    ContentType::How,
    ContentType::WhyWhyNot,
    ContentType::Certainty,
    ContentType::Example,
    ContentType::WhatIf,
    ContentType::HowTo,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedSection {
    pub content_type: ContentType,
    pub label: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graphic: Option<Graphic>,
    pub pattern: Pattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedExplanation {
    pub concise_text: String,
    /// Icon graphics shown with the concise text.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub concise_graphics: Vec<Graphic>,
    pub detailed_sections: Vec<RenderedSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("no template for {content_type} in domain `{domain}` or generic")]
    MissingTemplate {
        content_type: ContentType,
        domain: String,
    },
    #[error("missing facts: {}", .keys.join(", "))]
    MissingFact { keys: Vec<String> },
}

fn fill(body: &str, s: &Scenario, missing: &mut BTreeSet<String>) -> String {
    let mut out = String::with_capacity(body.len());
    // bodies were checked on registration
    for piece in pieces(body).unwrap_or_default() {
        match piece {
            Piece::Text(t) => out.push_str(t),
            Piece::Slot(name) => match s.facts.get(name) {
                Some(v) => out.push_str(v),
                None => {
                    missing.insert(name.to_string());
                }
            },
        }
    }
    out
}

/// Fills the planned templates from `s.facts`.
///
/// Sections follow canonical order; the concise text joins the concise
/// phrasings of `plan.concise` with single spaces in [`CONCISE_ORDER`].
/// Graphics are attached only where the paradigm admits them.
pub fn render(
    s: &Scenario,
    plan: &DetailPlan,
    paradigm: &Paradigm,
    registry: &TemplateRegistry,
) -> Result<RenderedExplanation, RenderError> {
    let mut templates = Vec::new();
    for t in plan.detailed.iter() {
        let tpl = registry
            .lookup(t, &s.domain)
            .ok_or_else(|| RenderError::MissingTemplate {
                content_type: t,
                domain: s.domain.clone(),
            })?;
        templates.push(tpl);
    }
    // concise types outside the detailed plan would break containment
    if let Some(t) = plan.concise.difference(plan.detailed).iter().next() {
        return Err(RenderError::MissingTemplate {
            content_type: t,
            domain: s.domain.clone(),
        });
    }

    let mut missing = BTreeSet::new();
    let detailed_graphics = paradigm.applicable && paradigm.format == Format::TextWithGraphics;
    let concise_graphics_ok = paradigm.applicable && paradigm.concise_format == Format::TextWithGraphics;

    let detailed_sections = templates
        .iter()
        .map(|tpl| RenderedSection {
            content_type: tpl.content_type,
            label: tpl.content_type.label().to_string(),
            text: fill(&tpl.body, s, &mut missing),
            graphic: tpl.graphic.clone().filter(|_| detailed_graphics),
            pattern: paradigm
                .fragment_patterns
                .get(&tpl.content_type)
                .copied()
                .unwrap_or(Pattern::Explicit),
        })
        .collect();

    let mut concise = Vec::new();
    let mut concise_graphics = Vec::new();
    for t in CONCISE_ORDER.into_iter().filter(|t| plan.concise.contains(*t)) {
        let tpl = templates
            .iter()
            .find(|tpl| tpl.content_type == t)
            .expect("concise is within detailed");
        concise.push(fill(tpl.concise_body(), s, &mut missing));
        if let Some(g) = &tpl.graphic {
            if concise_graphics_ok && g.complexity == GraphicComplexity::Icon {
                concise_graphics.push(g.clone());
            }
        }
    }

    if !missing.is_empty() {
        return Err(RenderError::MissingFact {
            keys: missing.into_iter().collect(),
        });
    }
    Ok(RenderedExplanation {
        concise_text: concise.join(" "),
        concise_graphics,
        detailed_sections,
    })
}
