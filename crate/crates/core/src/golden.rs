//! Expected recommendations and the corpus check against them.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::{
    recommend_with, Availability, DecisionTable, Delivery, DesignRecommendation, DetailPlan, Paradigm,
};
use crate::format::CorpusEntry;
use crate::model::{ContentTypeSet, Modality};
use crate::templates::TemplateRegistry;

/// A recommendation without its rationale. Unknown fields are ignored, so a
/// full report parses as a golden.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRecommendation {
    pub availability: Availability,
    pub delivery: Delivery,
    pub content: ContentTypeSet,
    pub detail: DetailPlan,
    pub explanation_modality: Modality,
    pub paradigm: Paradigm,
    pub confirmation_required: bool,
}

impl From<&DesignRecommendation> for GoldenRecommendation {
    fn from(r: &DesignRecommendation) -> Self {
        GoldenRecommendation {
            availability: r.availability,
            delivery: r.delivery,
            content: r.content,
            detail: r.detail,
            explanation_modality: r.explanation_modality,
            paradigm: r.paradigm.clone(),
            confirmation_required: r.confirmation_required,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Dotted path, e.g. `delivery.mode`.
    pub field: String,
    pub expected: Value,
    pub actual: Value,
}

fn leaves(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        // only structs nest; maps such as fragment_patterns compare whole
        Value::Object(m) if prefix.is_empty() || matches!(prefix, "delivery" | "detail" | "paradigm") => {
            for (k, child) in m {
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                leaves(&path, child, out);
            }
        }
        _ => out.push((prefix.to_string(), v.clone())),
    }
}

fn flat(g: &GoldenRecommendation) -> Vec<(String, Value)> {
    let mut out = Vec::new();
    leaves("", &serde_json::to_value(g).expect("golden serializes"), &mut out);
    out
}

impl GoldenRecommendation {
    /// Field-level differences, in field order.
    pub fn compare(&self, actual: &GoldenRecommendation) -> Vec<Mismatch> {
        flat(self)
            .into_iter()
            .zip(flat(actual))
            .filter(|((_, e), (_, a))| e != a)
            .map(|((field, expected), (_, actual))| Mismatch {
                field,
                expected,
                actual,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    NoGolden,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub name: String,
    pub id: String,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub scenarios: Vec<ScenarioResult>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub no_golden: usize,
    pub errors: usize,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for r in &self.scenarios {
            match r.outcome {
                Outcome::Pass => lines.push(format!("PASS {} ({})", r.name, r.id)),
                Outcome::NoGolden => lines.push(format!("SKIP {} ({}): no golden", r.name, r.id)),
                Outcome::Error => lines.push(format!(
                    "ERROR {} ({}): {}",
                    r.name,
                    r.id,
                    r.error.as_deref().unwrap_or("")
                )),
                Outcome::Fail => {
                    lines.push(format!("FAIL {} ({})", r.name, r.id));
                    for m in &r.mismatches {
                        lines.push(format!("  {}: expected {}, got {}", m.field, m.expected, m.actual));
                    }
                }
            }
        }
        lines.push(format!(
            "{}/{} passed ({} failed, {} without golden, {} errors)",
            self.passed, self.total, self.failed, self.no_golden, self.errors
        ));
        lines
    }
}

pub fn run_corpus(entries: &[CorpusEntry]) -> CorpusReport {
    run_corpus_with(entries, DecisionTable::canonical(), TemplateRegistry::builtin())
}

pub fn run_corpus_with(
    entries: &[CorpusEntry],
    table: &DecisionTable,
    templates: &TemplateRegistry,
) -> CorpusReport {
    let scenarios: Vec<ScenarioResult> = entries
        .iter()
        .map(|e| {
            let mut result = ScenarioResult {
                name: e.name.clone(),
                id: e.scenario.id.clone(),
                outcome: Outcome::Pass,
                mismatches: Vec::new(),
                error: None,
            };
            match recommend_with(&e.scenario, table, templates) {
                Err(err) => {
                    result.outcome = Outcome::Error;
                    result.error = Some(err.to_string());
                }
                Ok(rec) => match &e.golden {
                    None => result.outcome = Outcome::NoGolden,
                    Some(g) => {
                        result.mismatches = g.compare(&GoldenRecommendation::from(&rec));
                        if !result.mismatches.is_empty() {
                            result.outcome = Outcome::Fail;
                        }
                    }
                },
            }
            result
        })
        .collect();
    let count = |o: Outcome| scenarios.iter().filter(|r| r.outcome == o).count();
    CorpusReport {
        total: scenarios.len(),
        passed: count(Outcome::Pass),
        failed: count(Outcome::Fail),
        no_golden: count(Outcome::NoGolden),
        errors: count(Outcome::Error),
        scenarios,
    }
}
