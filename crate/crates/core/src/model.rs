//! Domain vocabulary shared by the parser, the decision engine and the
//! template renderer.
//!
//! Every closed enumeration here has a lowercase snake_case token used both in
//! `.xas` files and in JSON output. Values are plain immutable data; the only
//! logic is [`validate_scenario`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Declares a closed enumeration with a canonical token per variant.
///
/// Extra `aliases` are accepted when parsing but never emitted.
macro_rules! token_enum {
    (
        $(#[$meta:meta])*
        pub enum $name:ident {
            $( $variant:ident => $token:literal $(| $alias:literal)* ),+ $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $( $variant ),+
        }

        impl $name {
            /// All variants in canonical order.
            pub const ALL: &'static [$name] = &[ $( $name::$variant ),+ ];

            pub fn token(self) -> &'static str {
                match self {
                    $( $name::$variant => $token ),+
                }
            }

            pub fn from_token(token: &str) -> Option<Self> {
                match token {
                    $( $token $(| $alias)* => Some($name::$variant), )+
                    _ => None,
                }
            }

            /// Canonical tokens, in canonical order.
            pub fn tokens() -> Vec<&'static str> {
                Self::ALL.iter().map(|v| v.token()).collect()
            }

            pub fn index(self) -> usize {
                self as usize
            }
        }

        impl ::std::fmt::Display for $name {
            fn fmt(&self, f: &mut ::std::fmt::Formatter<'_>) -> ::std::fmt::Result {
                f.write_str(self.token())
            }
        }

        impl ::serde::Serialize for $name {
            fn serialize<S: ::serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(self.token())
            }
        }

        impl<'de> ::serde::Deserialize<'de> for $name {
            fn deserialize<D: ::serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let raw = <String as ::serde::Deserialize>::deserialize(deserializer)?;
                $name::from_token(&raw).ok_or_else(|| {
                    <D::Error as ::serde::de::Error>::custom(format!(
                        "unknown {} `{}`, expected one of: {}",
                        stringify!($name),
                        raw,
                        $name::tokens().join(", ")
                    ))
                })
            }
        }
    };
}

pub(crate) use token_enum;

token_enum! {
    /// The seven explanation content types, in canonical order.
    pub enum ContentType {
        InputOutput => "input_output",
        WhyWhyNot => "why_why_not",
        How => "how",
        Certainty => "certainty",
        Example => "example",
        WhatIf => "what_if",
        HowTo => "how_to",
    }
}

impl ContentType {
    /// Human-facing label, e.g. `Why/Why-Not`.
    pub fn label(self) -> &'static str {
        match self {
            ContentType::InputOutput => "Input/Output",
            ContentType::WhyWhyNot => "Why/Why-Not",
            ContentType::How => "How",
            ContentType::Certainty => "Certainty",
            ContentType::Example => "Example",
            ContentType::WhatIf => "What-If",
            ContentType::HowTo => "How-To",
        }
    }
}

token_enum! {
    pub enum SystemGoal {
        UserIntentDiscovery => "intent_discovery" | "user_intent_discovery",
        UserIntentAssistance => "intent_assistance" | "user_intent_assistance",
        ErrorManagement => "error_management",
        TrustBuilding => "trust_building",
    }
}

token_enum! {
    pub enum UserGoal {
        ResolveConfusionSurprise => "resolve_confusion_surprise" | "resolve_surprise" | "resolve_confusion",
        PrivacyAwareness => "privacy_awareness",
        Reliability => "reliability",
        Informativeness => "informativeness",
    }
}

token_enum! {
    /// Discretized load or urgency. Ordered `Low < Medium < High`.
    pub enum LoadLevel {
        Low => "low",
        Medium => "medium",
        High => "high",
    }
}

token_enum! {
    pub enum Modality {
        Visual => "visual",
        Audio => "audio",
        Haptic => "haptic",
    }
}

token_enum! {
    pub enum AiLiteracy {
        Low => "low",
        High => "high",
    }
}

token_enum! {
    pub enum ConfidenceBand {
        Low => "low",
        Medium => "medium",
        High => "high",
    }
}

#[allow(clippy::derivable_impls)]
impl Default for LoadLevel {
    fn default() -> Self {
        LoadLevel::Low
    }
}

fn default_true() -> bool {
    true
}

fn default_version() -> u32 {
    1
}

fn default_domain() -> String {
    GENERIC_DOMAIN.to_string()
}

/// Domain tag used when a scenario names none, and the template fallback.
pub const GENERIC_DOMAIN: &str = "generic";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserState {
    pub activity: String,
    pub cognitive_load: LoadLevel,
    #[serde(default)]
    pub time_urgency: LoadLevel,
    #[serde(default)]
    pub surprised: bool,
    #[serde(default)]
    pub confused: bool,
    #[serde(default)]
    pub hands_busy: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextualInfo {
    pub location: String,
    pub time_of_day: String,
    /// Case-folded anchor-object labels visible in the surroundings.
    #[serde(default)]
    pub environment: BTreeSet<String>,
    #[serde(default)]
    pub visual_load: LoadLevel,
    #[serde(default)]
    pub audio_load: LoadLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    pub ai_literacy: AiLiteracy,
    #[serde(default = "default_true")]
    pub familiar_with_outcome: bool,
    #[serde(default)]
    pub preferences: BTreeMap<String, String>,
}

/// Model confidence, either measured or declared as a band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Confidence {
    Score(f64),
    Band(ConfidenceBand),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AiOutput {
    pub modality: Modality,
    pub description: String,
    pub confidence: Confidence,
    /// Case-folded labels of the objects the output is attached to.
    #[serde(default)]
    pub anchors: BTreeSet<String>,
}

/// The complete engine input: five key factors plus the AI output descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    #[serde(default = "default_version")]
    pub version: u32,
    /// Selects the explanation template family (`route`, `plant`, ...).
    #[serde(default = "default_domain")]
    pub domain: String,
    pub user_state: UserState,
    pub context: ContextualInfo,
    pub system_goals: BTreeSet<SystemGoal>,
    pub user_goals: BTreeSet<UserGoal>,
    pub profile: UserProfile,
    pub ai_output: AiOutput,
    /// Template bindings.
    #[serde(default)]
    pub facts: BTreeMap<String, String>,
}

/// Returns every invariant violation of `s`; empty means valid.
pub fn validate_scenario(s: &Scenario) -> Vec<String> {
    let mut out = Vec::new();
    if s.id.trim().is_empty() {
        out.push("id must be nonempty".to_string());
    }
    if s.version != 1 {
        out.push(format!("unsupported version {}, expected 1", s.version));
    }
    if s.domain.trim().is_empty() {
        out.push("domain must be nonempty".to_string());
    }
    if s.system_goals.is_empty() {
        out.push("system_goals must be nonempty".to_string());
    }
    if s.user_goals.is_empty() {
        out.push("user_goals must be nonempty".to_string());
    }
    if let Confidence::Score(x) = s.ai_output.confidence {
        if !(0.0..=1.0).contains(&x) {
            out.push("confidence out of [0,1]".to_string());
        }
    }
    for (field, labels) in [
        ("environment", &s.context.environment),
        ("anchors", &s.ai_output.anchors),
    ] {
        for label in labels {
            if label.trim().is_empty() {
                out.push(format!("{field} contains an empty label"));
            } else if *label != fold_label(label) {
                out.push(format!("{field} label `{label}` is not case-folded"));
            }
        }
    }
    out
}

/// Canonical form of an anchor-object label.
pub fn fold_label(label: &str) -> String {
    label.trim().to_lowercase()
}

/// A subset of [`ContentType`] that always iterates in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ContentTypeSet(u8);

impl ContentTypeSet {
    pub const fn empty() -> Self {
        ContentTypeSet(0)
    }

    pub fn all() -> Self {
        ContentType::ALL.iter().copied().collect()
    }

    pub fn of(types: &[ContentType]) -> Self {
        types.iter().copied().collect()
    }

    pub fn insert(&mut self, t: ContentType) -> bool {
        let had = self.contains(t);
        self.0 |= 1 << t.index();
        !had
    }

    pub fn remove(&mut self, t: ContentType) -> bool {
        let had = self.contains(t);
        self.0 &= !(1 << t.index());
        had
    }

    pub fn contains(self, t: ContentType) -> bool {
        self.0 & (1 << t.index()) != 0
    }

    pub fn union(self, other: Self) -> Self {
        ContentTypeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ContentTypeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ContentTypeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = ContentType> {
        ContentType::ALL
            .iter()
            .copied()
            .filter(move |t| self.contains(*t))
    }

    pub fn tokens(self) -> Vec<&'static str> {
        self.iter().map(ContentType::token).collect()
    }

    pub fn labels(self) -> Vec<&'static str> {
        self.iter().map(ContentType::label).collect()
    }
}

impl FromIterator<ContentType> for ContentTypeSet {
    fn from_iter<I: IntoIterator<Item = ContentType>>(iter: I) -> Self {
        let mut set = ContentTypeSet::empty();
        for t in iter {
            set.insert(t);
        }
        set
    }
}

impl fmt::Debug for ContentTypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ContentTypeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ContentTypeSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<ContentType>::deserialize(deserializer)?;
        Ok(items.into_iter().collect())
    }
}
