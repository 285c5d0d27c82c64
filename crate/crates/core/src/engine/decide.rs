use std::collections::BTreeMap;

use super::{
    Availability, Decided, Delivery, DeliveryMode, DesignRecommendation, DetailPlan, EngineError,
    Format, FragmentTraits, GraphicComplexity, Guideline, Paradigm, Pattern, RationaleEntry,
};
use crate::engine::DecisionTable;
use crate::model::{
    validate_scenario, Confidence, ConfidenceBand, ContentType, ContentTypeSet, LoadLevel,
    Modality, Scenario, SystemGoal, UserGoal,
};
use crate::templates::TemplateRegistry;

/// Scores at or above this are medium confidence.
pub const MEDIUM_CONFIDENCE: f64 = 0.5;
/// Scores at or above this are high confidence.
pub const HIGH_CONFIDENCE: f64 = 0.9;

/// Types a goal promotes into the concise view, next to Why/Why-Not.
pub const CONCISE_PRIORITIES: &[(Goal, &[ContentType])] = &[
    (Goal::System(SystemGoal::ErrorManagement), &[ContentType::Certainty, ContentType::HowTo]),
    (Goal::System(SystemGoal::TrustBuilding), &[ContentType::How]),
    (Goal::User(UserGoal::PrivacyAwareness), &[ContentType::How]),
    (Goal::User(UserGoal::ResolveConfusionSurprise), &[ContentType::HowTo]),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    System(SystemGoal),
    User(UserGoal),
}

impl Goal {
    fn token(self) -> &'static str {
        match self {
            Goal::System(g) => g.token(),
            Goal::User(g) => g.token(),
        }
    }

    fn active_in(self, s: &Scenario) -> bool {
        match self {
            Goal::System(g) => s.system_goals.contains(&g),
            Goal::User(g) => s.user_goals.contains(&g),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfidenceAssessment {
    pub band: ConfidenceBand,
    pub confirmation_required: bool,
}

fn band_of_score(x: f64) -> ConfidenceBand {
    if x >= HIGH_CONFIDENCE {
        ConfidenceBand::High
    } else if x >= MEDIUM_CONFIDENCE {
        ConfidenceBand::Medium
    } else {
        ConfidenceBand::Low
    }
}

pub fn confidence_band(s: &Scenario) -> Decided<ConfidenceAssessment> {
    let (band, source) = match s.ai_output.confidence {
        Confidence::Band(b) => (b, "declared band".to_string()),
        Confidence::Score(x) => {
            let b = band_of_score(x);
            (
                b,
                format!("score {x} maps to {b} (low < {MEDIUM_CONFIDENCE} <= medium < {HIGH_CONFIDENCE} <= high)"),
            )
        }
    };
    let confirmation_required = band == ConfidenceBand::Low;
    let reason = if confirmation_required {
        format!("{source}; low confidence, ask the user to confirm before presenting the output")
    } else {
        source
    };
    Decided {
        value: ConfidenceAssessment {
            band,
            confirmation_required,
        },
        rationale: vec![RationaleEntry::new(
            Guideline::Cb,
            "confirmation_required",
            format!("{band} confidence"),
            reason,
        )],
    }
}

/// Auto-trigger only when the user has capacity and has a reason to want an
/// explanation; otherwise wait for a manual trigger.
pub fn decide_delivery(s: &Scenario) -> Decided<Delivery> {
    let u = &s.user_state;
    let band = confidence_band(s).value.band;

    let mut limits = Vec::new();
    if u.cognitive_load == LoadLevel::High {
        limits.push("cognitive load high");
    }
    if u.time_urgency == LoadLevel::High {
        limits.push("time urgency high");
    }
    let mut needs = Vec::new();
    if u.surprised {
        needs.push("user surprised".to_string());
    }
    if u.confused {
        needs.push("user confused".to_string());
    }
    if !s.profile.familiar_with_outcome {
        needs.push("outcome unfamiliar".to_string());
    }
    if band != ConfidenceBand::High {
        needs.push(format!("model confidence {band}"));
    }

    let explanation_modality = decide_modality(s).value;
    let trigger_modality = if u.hands_busy || explanation_modality == Modality::Audio {
        Modality::Audio
    } else {
        Modality::Visual
    };

    let (mode, decision, reason) = if limits.is_empty() && !needs.is_empty() {
        (
            DeliveryMode::AutoTrigger,
            "auto-trigger".to_string(),
            format!("{}, capacity ok", needs.join(", ")),
        )
    } else {
        let why = if !limits.is_empty() {
            format!("capacity limited ({})", limits.join(", "))
        } else {
            "no trigger condition: user familiar, not surprised or confused, confidence high".to_string()
        };
        let affordance = if u.hands_busy {
            "audio affordance since hands are busy"
        } else if explanation_modality == Modality::Audio {
            "audio affordance matching the explanation"
        } else {
            "visual affordance"
        };
        (
            DeliveryMode::ManualTrigger,
            "manual-trigger".to_string(),
            format!("{why}; {affordance}"),
        )
    };

    Decided {
        value: Delivery {
            mode,
            trigger_modality,
        },
        rationale: vec![RationaleEntry::new(Guideline::G2, "delivery", decision, reason)],
    }
}

fn fmt_set(set: ContentTypeSet) -> String {
    if set.is_empty() {
        "{}".to_string()
    } else {
        format!("{{{}}}", set.labels().join(", "))
    }
}

/// Union within each factor, intersection across the three factors.
pub fn select_content(
    s: &Scenario,
    table: &DecisionTable,
) -> Result<Decided<ContentTypeSet>, EngineError> {
    let system = s
        .system_goals
        .iter()
        .fold(ContentTypeSet::empty(), |acc, g| acc.union(table.system_row(*g)));
    let user = s
        .user_goals
        .iter()
        .fold(ContentTypeSet::empty(), |acc, g| acc.union(table.user_row(*g)));
    let literacy = table.literacy_row(s.profile.ai_literacy);
    let selected = system.intersection(user).intersection(literacy);
    if selected.is_empty() {
        return Err(EngineError::EmptySelection {
            system,
            user,
            literacy,
        });
    }
    let reason = format!(
        "system goals {} ∩ user goals {} ∩ {} literacy {}",
        fmt_set(system),
        fmt_set(user),
        s.profile.ai_literacy,
        fmt_set(literacy),
    );
    Ok(Decided {
        value: selected,
        rationale: vec![RationaleEntry::new(
            Guideline::G3,
            "content",
            selected.labels().join(", "),
            reason,
        )],
    })
}

/// Why/Why-Not leads the concise view; active goals may promote more types
/// when they were selected.
pub fn plan_detail(content: ContentTypeSet, s: &Scenario) -> Result<Decided<DetailPlan>, EngineError> {
    if !content.contains(ContentType::WhyWhyNot) {
        return Err(EngineError::WhyNotSelected(content));
    }
    let mut concise = ContentTypeSet::of(&[ContentType::WhyWhyNot]);
    let mut notes = Vec::new();
    for (goal, promoted) in CONCISE_PRIORITIES {
        if !goal.active_in(s) {
            continue;
        }
        let promoted = ContentTypeSet::of(promoted);
        let kept = promoted.intersection(content);
        concise = concise.union(kept);
        let dropped = promoted.difference(content);
        let mut note = format!("{} promotes {}", goal.token(), fmt_set(promoted));
        if !dropped.is_empty() {
            note.push_str(&format!(" ({} not selected)", fmt_set(dropped)));
        }
        notes.push(note);
    }
    let g4_reason = if notes.is_empty() {
        "Why prioritized; no active goal promotes further types".to_string()
    } else {
        format!("Why prioritized; {}", notes.join("; "))
    };
    let plan = DetailPlan {
        concise,
        detailed: content,
        expansion_affordance: true,
    };
    Ok(Decided {
        value: plan,
        rationale: vec![
            RationaleEntry::new(Guideline::G4, "detail.concise", concise.labels().join(", "), g4_reason),
            RationaleEntry::new(
                Guideline::G5,
                "detail.detailed",
                format!("{} on request", content.labels().join(", ")),
                "every selected type stays reachable through an expansion affordance",
            ),
        ],
    })
}

/// Follow the output's modality (haptic becomes audio), then switch channels
/// away from an overloaded one.
pub fn decide_modality(s: &Scenario) -> Decided<Modality> {
    let c = &s.context;
    let (base, base_reason) = match s.ai_output.modality {
        Modality::Haptic => (Modality::Audio, "haptic output explained through audio"),
        Modality::Visual => (Modality::Visual, "same modality as the visual output"),
        Modality::Audio => (Modality::Audio, "same modality as the audio output"),
    };
    let (value, reason) = match base {
        Modality::Visual if c.visual_load == LoadLevel::High => (
            Modality::Audio,
            format!("{base_reason}, switched to audio because visual load is high"),
        ),
        Modality::Audio if c.audio_load == LoadLevel::High => (
            Modality::Visual,
            format!("{base_reason}, switched to visual because audio load is high"),
        ),
        _ => (base, base_reason.to_string()),
    };
    Decided {
        value,
        rationale: vec![RationaleEntry::new(Guideline::G6, "explanation_modality", value.token(), reason)],
    }
}

/// Format and per-fragment pattern for a visual explanation.
///
/// A fragment is implicit only when its template's anchor is present in the
/// scene or on the output. Graphics appear in the concise view only when
/// icon-class; the detailed view also admits images.
pub fn decide_paradigm(
    plan: &DetailPlan,
    s: &Scenario,
    modality: Modality,
    traits: &BTreeMap<ContentType, FragmentTraits>,
) -> Decided<Paradigm> {
    if modality != Modality::Visual {
        let value = Paradigm::not_applicable(plan.detailed);
        return Decided {
            value,
            rationale: vec![
                RationaleEntry::new(Guideline::G7, "paradigm.format", "not applicable", "explanation is audio"),
                RationaleEntry::new(Guideline::G8, "paradigm.pattern", "not applicable", "explanation is audio"),
            ],
        };
    }

    let none = FragmentTraits::default();
    let traits_of = |t: ContentType| traits.get(&t).unwrap_or(&none);

    let mut concise_graphics = Vec::new();
    let mut detailed_graphics = Vec::new();
    for t in plan.detailed.iter() {
        let Some(graphic) = traits_of(t).graphic else { continue };
        detailed_graphics.push(format!("{} {graphic}", t.label()));
        if graphic == GraphicComplexity::Icon && plan.concise.contains(t) {
            concise_graphics.push(format!("{} {graphic}", t.label()));
        }
    }
    let format = if detailed_graphics.is_empty() {
        Format::TextOnly
    } else {
        Format::TextWithGraphics
    };
    let concise_format = if concise_graphics.is_empty() {
        Format::TextOnly
    } else {
        Format::TextWithGraphics
    };
    let format_reason = match (format, concise_format) {
        (Format::TextOnly, _) => "text is primary; no planned type declares an easy graphic".to_string(),
        (_, Format::TextOnly) => format!(
            "text is primary; detailed view adds {}",
            detailed_graphics.join(", ")
        ),
        _ => format!(
            "text is primary; concise view adds {}; detailed view adds {}",
            concise_graphics.join(", "),
            detailed_graphics.join(", ")
        ),
    };

    let mut fragment_patterns = BTreeMap::new();
    let mut implicit = Vec::new();
    let mut unresolved = Vec::new();
    for t in plan.detailed.iter() {
        let pattern = match &traits_of(t).anchor {
            Some(anchor)
                if s.context.environment.contains(anchor) || s.ai_output.anchors.contains(anchor) =>
            {
                implicit.push(format!("{} on `{anchor}`", t.label()));
                Pattern::Implicit
            }
            Some(anchor) => {
                unresolved.push(format!("`{anchor}`"));
                Pattern::Explicit
            }
            None => Pattern::Explicit,
        };
        fragment_patterns.insert(t, pattern);
    }
    let pattern_decision = if implicit.is_empty() {
        "explicit".to_string()
    } else {
        let explicit: Vec<&str> = fragment_patterns
            .iter()
            .filter(|(_, p)| **p == Pattern::Explicit)
            .map(|(t, _)| t.label())
            .collect();
        if explicit.is_empty() {
            "implicit".to_string()
        } else {
            format!("implicit with explicit {}", explicit.join(", "))
        }
    };
    let mut pattern_reason = if implicit.is_empty() {
        "no planned fragment has an anchor in the scene".to_string()
    } else {
        format!("embedded: {}", implicit.join(", "))
    };
    if !unresolved.is_empty() {
        pattern_reason.push_str(&format!("; anchors not in scene: {}", unresolved.join(", ")));
    }

    let value = Paradigm {
        applicable: true,
        format,
        concise_format,
        fragment_patterns,
    };
    let format_decision = match format {
        Format::TextOnly => "text only",
        Format::TextWithGraphics => "text with graphics",
    };
    Decided {
        value,
        rationale: vec![
            RationaleEntry::new(Guideline::G7, "paradigm.format", format_decision, format_reason),
            RationaleEntry::new(Guideline::G8, "paradigm.pattern", pattern_decision, pattern_reason),
        ],
    }
}

/// Full recommendation using the shipped decision table and template pack.
pub fn recommend(s: &Scenario) -> Result<DesignRecommendation, EngineError> {
    recommend_with(s, DecisionTable::canonical(), TemplateRegistry::builtin())
}

pub fn recommend_with(
    s: &Scenario,
    table: &DecisionTable,
    templates: &TemplateRegistry,
) -> Result<DesignRecommendation, EngineError> {
    let violations = validate_scenario(s);
    if !violations.is_empty() {
        return Err(EngineError::InvalidScenario(violations));
    }

    let mut rationale = vec![RationaleEntry::new(
        Guideline::G1,
        "availability",
        "always available",
        "explanations are prepared with every outcome and stay accessible",
    )];

    let confidence = confidence_band(s);
    let delivery = decide_delivery(s);
    let content = select_content(s, table)?;
    let detail = plan_detail(content.value, s)?;
    let modality = decide_modality(s);
    let traits = templates.fragment_traits(&s.domain);
    let paradigm = decide_paradigm(&detail.value, s, modality.value, &traits);

    rationale.extend(confidence.rationale);
    rationale.extend(delivery.rationale);
    rationale.extend(content.rationale);
    rationale.extend(detail.rationale);
    rationale.extend(modality.rationale);
    rationale.extend(paradigm.rationale);

    Ok(DesignRecommendation {
        availability: Availability::Available,
        delivery: delivery.value,
        content: content.value,
        detail: detail.value,
        explanation_modality: modality.value,
        paradigm: paradigm.value,
        confirmation_required: confidence.value.confirmation_required,
        rationale,
    })
}
