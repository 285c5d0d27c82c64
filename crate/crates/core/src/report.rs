//! The structured recommendation output shared by the CLI, the HTTP API and
//! the Python bindings, plus its human-readable rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::{recommend_with, DecisionTable, DesignRecommendation, EngineError, Format};
use crate::model::Scenario;
use crate::templates::{render, RenderedExplanation, TemplateRegistry};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendationReport {
    pub scenario_id: String,
    #[serde(flatten)]
    pub recommendation: DesignRecommendation,
    pub rendered: Option<RenderedExplanation>,
    /// Why `rendered` is null; a recommendation is still produced when the
    /// templates cannot be filled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub render_error: Option<String>,
}

impl RecommendationReport {
    /// Pretty JSON with a trailing newline; the canonical serialized form.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn build_report(s: &Scenario) -> Result<RecommendationReport, EngineError> {
    build_report_with(s, DecisionTable::canonical(), TemplateRegistry::builtin())
}

pub fn build_report_with(
    s: &Scenario,
    table: &DecisionTable,
    templates: &TemplateRegistry,
) -> Result<RecommendationReport, EngineError> {
    let recommendation = recommend_with(s, table, templates)?;
    let (rendered, render_error) = match render(s, &recommendation.detail, &recommendation.paradigm, templates) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(RecommendationReport {
        scenario_id: s.id.clone(),
        recommendation,
        rendered,
        render_error,
    })
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::TextOnly => "text only",
        Format::TextWithGraphics => "text with graphics",
    }
}

/// Multi-line human summary: decisions, rationale trace, explanation text.
pub fn human_report(r: &RecommendationReport) -> String {
    let rec = &r.recommendation;
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", r.scenario_id);
    let _ = writeln!(out, "availability: {}", rec.availability);
    let _ = writeln!(
        out,
        "delivery: {} (trigger modality {})",
        rec.delivery.mode, rec.delivery.trigger_modality
    );
    let _ = writeln!(out, "content: {}", rec.content.labels().join(", "));
    let _ = writeln!(out, "concise: {}", rec.detail.concise.labels().join(", "));
    let _ = writeln!(out, "detailed: {} (on request)", rec.detail.detailed.labels().join(", "));
    let _ = writeln!(out, "explanation modality: {}", rec.explanation_modality);
    if rec.paradigm.applicable {
        let _ = writeln!(
            out,
            "format: {} (concise view {})",
            format_name(rec.paradigm.format),
            format_name(rec.paradigm.concise_format)
        );
        let patterns: Vec<String> = rec
            .paradigm
            .fragment_patterns
            .iter()
            .map(|(t, p)| format!("{} {p}", t.label()))
            .collect();
        let _ = writeln!(out, "patterns: {}", patterns.join(", "));
    } else {
        let _ = writeln!(out, "paradigm: not applicable (audio)");
    }
    let _ = writeln!(
        out,
        "confirmation required: {}",
        if rec.confirmation_required { "yes" } else { "no" }
    );
    out.push_str("\nrationale:\n");
    for e in &rec.rationale {
        let _ = writeln!(out, "  {}", e.line());
    }
    out.push('\n');
    match (&r.rendered, &r.render_error) {
        (Some(x), _) => {
            out.push_str(&human_explanation(x));
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "explanation: not rendered ({e})");
        }
        (None, None) => {}
    }
    out
}

/// The explanation text alone: concise line, then one line per section.
pub fn human_explanation(x: &RenderedExplanation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "concise: {}", x.concise_text);
    for g in &x.concise_graphics {
        let _ = writeln!(out, "  + {} ({})", g.asset_id, g.complexity);
    }
    out.push_str("detailed:\n");
    for s in &x.detailed_sections {
        let _ = writeln!(out, "  [{}] {} ({})", s.label, s.text, s.pattern);
        if let Some(g) = &s.graphic {
            let _ = writeln!(out, "    + {} ({})", g.asset_id, g.complexity);
        }
    }
    out
}
