//! The explanation-design decision engine.
//!
//! Each dimension of the design (availability, delivery, content, detail,
//! modality, paradigm) is decided by a small pure function that also emits a
//! rationale entry citing the guideline it applied. [`recommend`] composes
//! them in a fixed order.

mod decide;
mod table;
mod whatif;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::{token_enum, ContentType, ContentTypeSet, Modality};

pub use decide::{
    confidence_band, decide_delivery, decide_modality, decide_paradigm, plan_detail, recommend,
    recommend_with, select_content, ConfidenceAssessment, CONCISE_PRIORITIES, HIGH_CONFIDENCE,
    MEDIUM_CONFIDENCE,
};
pub use table::{DecisionTable, TableViolation};
pub use whatif::{whatif_diff, whatif_diff_with, Factor, FieldDiff, WhatIfDiff, DIFF_FIELDS};

token_enum! {
    pub enum Availability {
        Available => "available",
    }
}

token_enum! {
    pub enum DeliveryMode {
        ManualTrigger => "manual_trigger",
        AutoTrigger => "auto_trigger",
    }
}

token_enum! {
    pub enum Format {
        TextOnly => "text_only",
        TextWithGraphics => "text_with_graphics",
    }
}

token_enum! {
    pub enum Pattern {
        Implicit => "implicit",
        Explicit => "explicit",
    }
}

token_enum! {
    /// Visual complexity class of a graphic asset.
    pub enum GraphicComplexity {
        Icon => "icon",
        Image => "image",
    }
}

token_enum! {
    /// Guideline cited by a rationale entry; `Cb` is the confidence-band policy.
    pub enum Guideline {
        G1 => "G1",
        Cb => "CB",
        G2 => "G2",
        G3 => "G3",
        G4 => "G4",
        G5 => "G5",
        G6 => "G6",
        G7 => "G7",
        G8 => "G8",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delivery {
    pub mode: DeliveryMode,
    /// Modality of the manual-trigger affordance; never haptic.
    pub trigger_modality: Modality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetailPlan {
    pub concise: ContentTypeSet,
    pub detailed: ContentTypeSet,
    pub expansion_affordance: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Paradigm {
    /// False when the explanation is audio; the remaining fields are then a
    /// text-only, all-explicit placeholder.
    pub applicable: bool,
    pub format: Format,
    /// Format of the default concise view (icons only).
    pub concise_format: Format,
    pub fragment_patterns: BTreeMap<ContentType, Pattern>,
}

impl Paradigm {
    pub fn not_applicable(detailed: ContentTypeSet) -> Self {
        Paradigm {
            applicable: false,
            format: Format::TextOnly,
            concise_format: Format::TextOnly,
            fragment_patterns: detailed.iter().map(|t| (t, Pattern::Explicit)).collect(),
        }
    }
}

/// Anchor and graphic declarations of one content type's template.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FragmentTraits {
    pub anchor: Option<String>,
    pub graphic: Option<GraphicComplexity>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationaleEntry {
    pub guideline: Guideline,
    pub decision_field: String,
    pub decision: String,
    pub reason: String,
}

impl RationaleEntry {
    pub(crate) fn new(
        guideline: Guideline,
        field: &str,
        decision: impl Into<String>,
        reason: impl Into<String>,
    ) -> Self {
        let reason = reason.into();
        debug_assert!(!reason.is_empty());
        RationaleEntry {
            guideline,
            decision_field: field.to_string(),
            decision: decision.into(),
            reason,
        }
    }

    /// `G2: auto-trigger — user surprised, capacity ok`
    pub fn line(&self) -> String {
        format!("{}: {} — {}", self.guideline, self.decision, self.reason)
    }
}

/// A decided value together with the rationale that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Decided<T> {
    pub value: T,
    pub rationale: Vec<RationaleEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignRecommendation {
    pub availability: Availability,
    pub delivery: Delivery,
    pub content: ContentTypeSet,
    pub detail: DetailPlan,
    pub explanation_modality: Modality,
    pub paradigm: Paradigm,
    pub confirmation_required: bool,
    pub rationale: Vec<RationaleEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("invalid scenario: {}", .0.join("; "))]
    InvalidScenario(Vec<String>),
    #[error("content selection is empty (system goals {system:?}, user goals {user:?}, literacy row {literacy:?})")]
    EmptySelection {
        system: ContentTypeSet,
        user: ContentTypeSet,
        literacy: ContentTypeSet,
    },
    #[error("selected content {0:?} lacks Why/Why-Not")]
    WhyNotSelected(ContentTypeSet),
}
