use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{recommend_with, DecisionTable, DesignRecommendation, EngineError};
use crate::model::{token_enum, Scenario};
use crate::templates::TemplateRegistry;

token_enum! {
    /// A separately substitutable part of a scenario.
    pub enum Factor {
        UserState => "user_state",
        Context => "context",
        SystemGoals => "system_goals",
        UserGoals => "user_goals",
        Profile => "profile",
        AiOutput => "ai_output",
        Domain => "domain",
    }
}

impl Factor {
    /// `a` with this factor taken from `b`.
    pub fn substitute(self, a: &Scenario, b: &Scenario) -> Scenario {
        let mut s = a.clone();
        match self {
            Factor::UserState => s.user_state = b.user_state.clone(),
            Factor::Context => s.context = b.context.clone(),
            Factor::SystemGoals => s.system_goals = b.system_goals.clone(),
            Factor::UserGoals => s.user_goals = b.user_goals.clone(),
            Factor::Profile => s.profile = b.profile.clone(),
            Factor::AiOutput => s.ai_output = b.ai_output.clone(),
            Factor::Domain => s.domain = b.domain.clone(),
        }
        s
    }
}

/// Recommendation fields compared by a diff, in report order.
pub const DIFF_FIELDS: &[&str] = &[
    "availability",
    "delivery",
    "content",
    "detail",
    "explanation_modality",
    "paradigm",
    "confirmation_required",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDiff {
    pub field: String,
    pub before: Value,
    pub after: Value,
    /// Factors that flip this field when substituted alone.
    pub attribution: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhatIfDiff {
    pub a: String,
    pub b: String,
    pub differences: Vec<FieldDiff>,
}

impl WhatIfDiff {
    pub fn is_empty(&self) -> bool {
        self.differences.is_empty()
    }
}

fn fields(r: &DesignRecommendation) -> serde_json::Map<String, Value> {
    match serde_json::to_value(r).expect("recommendation serializes") {
        Value::Object(mut m) => {
            m.retain(|k, _| DIFF_FIELDS.contains(&k.as_str()));
            m
        }
        _ => unreachable!(),
    }
}

pub fn whatif_diff(a: &Scenario, b: &Scenario) -> Result<WhatIfDiff, EngineError> {
    whatif_diff_with(a, b, DecisionTable::canonical(), TemplateRegistry::builtin())
}

pub fn whatif_diff_with(
    a: &Scenario,
    b: &Scenario,
    table: &DecisionTable,
    templates: &TemplateRegistry,
) -> Result<WhatIfDiff, EngineError> {
    let ra = fields(&recommend_with(a, table, templates)?);
    let rb = fields(&recommend_with(b, table, templates)?);

    // a substituted hybrid can be unrecommendable (e.g. an edited table with an
    // empty intersection); it then attributes nothing
    let hybrids: Vec<(Factor, Option<serde_json::Map<String, Value>>)> = Factor::ALL
        .iter()
        .map(|f| {
            let s = f.substitute(a, b);
            (*f, recommend_with(&s, table, templates).ok().map(|r| fields(&r)))
        })
        .collect();

    let mut differences = Vec::new();
    for field in DIFF_FIELDS {
        let before = &ra[*field];
        let after = &rb[*field];
        if before == after {
            continue;
        }
        let attribution = hybrids
            .iter()
            .filter(|(_, h)| h.as_ref().is_some_and(|h| h[*field] != *before))
            .map(|(f, _)| *f)
            .collect();
        differences.push(FieldDiff {
            field: field.to_string(),
            before: before.clone(),
            after: after.clone(),
            attribution,
        });
    }
    Ok(WhatIfDiff {
        a: a.id.clone(),
        b: b.id.clone(),
        differences,
    })
}
