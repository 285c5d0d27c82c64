#![allow(dead_code)]

pub mod oracle;
pub mod props;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use arxai_core::format::{load_corpus, read_corpus_dir, CorpusEntry};
use arxai_core::model::*;
use proptest::prelude::*;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn corpus() -> Vec<CorpusEntry> {
    let files = read_corpus_dir(&fixtures_dir()).expect("fixtures readable");
    load_corpus(&files).expect("fixtures load")
}

pub fn fixture(name: &str) -> Scenario {
    corpus()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("no fixture {name}"))
        .scenario
}

fn pick<T: Copy + std::fmt::Debug + 'static>(all: &'static [T]) -> impl Strategy<Value = T> {
    prop::sample::select(all)
}

fn text() -> impl Strategy<Value = String> {
    // quotes, backslashes, brackets, commas and hashes exercise the quoting
    "[a-zA-Z0-9 ,#\\[\\]\"\\\\'’-]{0,24}"
}

fn label() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9 ]{0,12}[a-z0-9]".prop_map(|s| fold_label(&s))
}

fn key() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,10}"
}

pub fn confidence() -> impl Strategy<Value = Confidence> {
    prop_oneof![
        (0u32..=1000).prop_map(|n| Confidence::Score(n as f64 / 1000.0)),
        pick(ConfidenceBand::ALL).prop_map(Confidence::Band),
    ]
}

/// Any valid scenario.
pub fn scenario() -> impl Strategy<Value = Scenario> {
    let user_state = (
        text(),
        pick(LoadLevel::ALL),
        pick(LoadLevel::ALL),
        any::<bool>(),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(activity, cognitive_load, time_urgency, surprised, confused, hands_busy)| UserState {
            activity,
            cognitive_load,
            time_urgency,
            surprised,
            confused,
            hands_busy,
        });
    let context = (
        text(),
        text(),
        prop::collection::btree_set(label(), 0..4),
        pick(LoadLevel::ALL),
        pick(LoadLevel::ALL),
    )
        .prop_map(|(location, time_of_day, environment, visual_load, audio_load)| ContextualInfo {
            location,
            time_of_day,
            environment,
            visual_load,
            audio_load,
        });
    let goals = (
        prop::collection::btree_set(pick(SystemGoal::ALL), 1..=4),
        prop::collection::btree_set(pick(UserGoal::ALL), 1..=4),
    );
    let profile = (
        pick(AiLiteracy::ALL),
        any::<bool>(),
        prop::collection::btree_map(key(), text(), 0..3),
    )
        .prop_map(|(ai_literacy, familiar_with_outcome, preferences)| UserProfile {
            ai_literacy,
            familiar_with_outcome,
            preferences,
        });
    let ai_output = (
        pick(Modality::ALL),
        text(),
        confidence(),
        prop::collection::btree_set(label(), 0..3),
    )
        .prop_map(|(modality, description, confidence, anchors)| AiOutput {
            modality,
            description,
            confidence,
            anchors,
        });
    (
        "[a-z][a-z0-9_-]{0,8}",
        prop::sample::select(vec!["generic", "route", "plant", "recipe", "food", "podcast", "cooking", "automation", "other"]),
        user_state,
        context,
        goals,
        profile,
        ai_output,
        prop::collection::btree_map(key(), text(), 0..4),
    )
        .prop_map(
            |(id, domain, user_state, context, (system_goals, user_goals), profile, ai_output, facts)| Scenario {
                id,
                version: 1,
                domain: domain.to_string(),
                user_state,
                context,
                system_goals,
                user_goals,
                profile,
                ai_output,
                facts,
            },
        )
}

/// Minimal valid scenario for grid enumeration.
pub fn base() -> Scenario {
    Scenario {
        id: "grid".into(),
        version: 1,
        domain: GENERIC_DOMAIN.into(),
        user_state: UserState {
            activity: "idle".into(),
            cognitive_load: LoadLevel::Low,
            time_urgency: LoadLevel::Low,
            surprised: false,
            confused: false,
            hands_busy: false,
        },
        context: ContextualInfo {
            location: "home".into(),
            time_of_day: "noon".into(),
            environment: BTreeSet::new(),
            visual_load: LoadLevel::Low,
            audio_load: LoadLevel::Low,
        },
        system_goals: [SystemGoal::UserIntentAssistance].into(),
        user_goals: [UserGoal::Reliability].into(),
        profile: UserProfile {
            ai_literacy: AiLiteracy::Low,
            familiar_with_outcome: true,
            preferences: BTreeMap::new(),
        },
        ai_output: AiOutput {
            modality: Modality::Visual,
            description: "output".into(),
            confidence: Confidence::Band(ConfidenceBand::High),
            anchors: BTreeSet::new(),
        },
        facts: BTreeMap::new(),
    }
}

/// Every nonempty subset of `all`.
pub fn nonempty_subsets<T: Copy + Ord>(all: &[T]) -> Vec<BTreeSet<T>> {
    (1u32..(1 << all.len()))
        .map(|mask| {
            all.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, t)| *t)
                .collect()
        })
        .collect()
}
