//! Explanation-design recommendations for everyday AR scenarios.
//!
//! A [`Scenario`](model::Scenario) describes the user's state, the context,
//! the system and user goals, the user profile and the AI output. The engine
//! turns it into a [`DesignRecommendation`](engine::DesignRecommendation):
//! when to explain, which content types at which level of detail, and in
//! which modality, format and pattern, each decision with a rationale entry.
//!
//! ```
//! use arxai_core::{engine::recommend, format::parse_scenario};
//!
//! let text = r#"
//! [scenario]
//! id = "walk"
//! [user_state]
//! activity = "walking"
//! cognitive_load = low
//! surprised = true
//! [context]
//! location = "outdoor"
//! time_of_day = "morning"
//! [goals]
//! system = ["intent_discovery"]
//! user = ["resolve_surprise"]
//! [profile]
//! ai_literacy = high
//! [ai_output]
//! modality = visual
//! description = "a detour"
//! confidence = 0.93
//! "#;
//! let s = parse_scenario(text).unwrap();
//! let r = recommend(&s).unwrap();
//! assert_eq!(r.rationale[2].line(), "G2: auto-trigger — user surprised, capacity ok");
//! ```

pub mod engine;
pub mod format;
pub mod golden;
pub mod model;
pub mod report;
pub mod templates;

pub use engine::{recommend, whatif_diff, DecisionTable, DesignRecommendation};
pub use format::{parse_scenario, serialize_scenario};
pub use model::{validate_scenario, Scenario};
pub use report::{build_report, RecommendationReport};
