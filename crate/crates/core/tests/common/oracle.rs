//! String-set evaluation of the content table that shares no code with the
//! engine's set algebra, plus the content sets of the eight worked scenarios.

use std::collections::BTreeSet;

use arxai_core::engine::{select_content, DecisionTable};
use arxai_core::model::{AiLiteracy, ContentType, ContentTypeSet, SystemGoal, UserGoal};

use AiLiteracy::{High, Low};
use SystemGoal::*;
use UserGoal::*;

pub fn row(set: ContentTypeSet) -> BTreeSet<&'static str> {
    set.tokens().into_iter().collect()
}

pub fn oracle(system: &[SystemGoal], user: &[UserGoal], literacy: AiLiteracy) -> BTreeSet<&'static str> {
    let t = DecisionTable::canonical();
    let union = |rows: Vec<BTreeSet<&'static str>>| rows.into_iter().fold(BTreeSet::new(), |a, b| &a | &b);
    let s = union(system.iter().map(|g| row(t.system_row(*g))).collect());
    let u = union(user.iter().map(|g| row(t.user_row(*g))).collect());
    let l = row(t.literacy_row(literacy));
    &(&s & &u) & &l
}

pub fn set(items: &[&'static str]) -> BTreeSet<&'static str> {
    items.iter().copied().collect()
}

pub type Worked = (&'static str, &'static [SystemGoal], &'static [UserGoal], AiLiteracy, &'static [&'static str]);

/// (fixture, system goals, user goals, literacy, content types as reported)
pub const WORKED: &[Worked] = &[
    ("scenario1", &[UserIntentDiscovery], &[ResolveConfusionSurprise], High, &["input_output", "why_why_not"]),
    ("scenario2", &[TrustBuilding], &[PrivacyAwareness], Low, &["input_output", "why_why_not", "how"]),
    ("case1", &[UserIntentAssistance], &[Reliability], Low, &["input_output", "why_why_not"]),
    (
        "case2",
        &[UserIntentAssistance, ErrorManagement],
        &[ResolveConfusionSurprise],
        High,
        &["input_output", "why_why_not", "how_to", "certainty", "how"],
    ),
    ("scenario3", &[UserIntentAssistance], &[Reliability, Informativeness], Low, &["input_output", "why_why_not"]),
    ("scenario4", &[UserIntentDiscovery], &[Informativeness], Low, &["input_output", "why_why_not"]),
    ("scenario5", &[UserIntentAssistance], &[Reliability], Low, &["input_output", "why_why_not"]),
    (
        "scenario6",
        &[UserIntentAssistance, TrustBuilding],
        &[ResolveConfusionSurprise],
        High,
        &["input_output", "why_why_not", "how_to", "certainty", "how"],
    ),
];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub fn worked_sets() -> Result<(), String> {
    for (name, system, user, literacy, expected) in WORKED {
        let got = oracle(system, user, *literacy);
        ensure!(got == set(expected), "{name}: table gives {got:?}, reported {expected:?}");
    }
    Ok(())
}

pub fn engine_on_fixtures() -> Result<(), String> {
    for (name, system, user, literacy, expected) in WORKED {
        let s = super::fixture(name);
        ensure!(s.system_goals == system.iter().copied().collect(), "{name}: system goals differ");
        ensure!(s.user_goals == user.iter().copied().collect(), "{name}: user goals differ");
        ensure!(s.profile.ai_literacy == *literacy, "{name}: literacy differs");
        let got = row(select_content(&s, DecisionTable::canonical()).map_err(|e| e.to_string())?.value);
        ensure!(got == set(expected), "{name}: engine gives {got:?}");
    }
    Ok(())
}

/// All 15 x 15 goal subsets at both literacies.
pub fn engine_on_every_goal_combination() -> Result<(), String> {
    let systems = super::nonempty_subsets(SystemGoal::ALL);
    let users = super::nonempty_subsets(UserGoal::ALL);
    let mut s = super::base();
    let mut n = 0;
    for sys in &systems {
        for usr in &users {
            for lit in AiLiteracy::ALL {
                s.system_goals = sys.clone();
                s.user_goals = usr.clone();
                s.profile.ai_literacy = *lit;
                let sys_v: Vec<_> = sys.iter().copied().collect();
                let usr_v: Vec<_> = usr.iter().copied().collect();
                let got = row(select_content(&s, DecisionTable::canonical()).map_err(|e| e.to_string())?.value);
                let want = oracle(&sys_v, &usr_v, *lit);
                ensure!(got == want, "{sys:?} {usr:?} {lit}: engine {got:?}, oracle {want:?}");
                n += 1;
            }
        }
    }
    ensure!(n == 450, "enumerated {n} combinations");
    Ok(())
}

pub fn prose_constraints() -> Result<(), String> {
    let t = DecisionTable::canonical();
    ensure!(!t.user_row(PrivacyAwareness).contains(ContentType::Certainty), "privacy row has certainty");
    ensure!(t.user_row(Reliability).contains(ContentType::Certainty), "reliability row lacks certainty");
    for c in [ContentType::How, ContentType::WhyWhyNot, ContentType::HowTo] {
        ensure!(t.system_row(ErrorManagement).contains(c), "error management row lacks {c}");
    }
    for c in [ContentType::Example, ContentType::WhyWhyNot] {
        ensure!(t.system_row(UserIntentDiscovery).contains(c), "discovery row lacks {c}");
    }
    ensure!(
        row(t.literacy_row(Low)) == set(&["input_output", "why_why_not", "how", "certainty"]),
        "low literacy row is {:?}",
        row(t.literacy_row(Low))
    );
    ensure!(row(t.literacy_row(High)).len() == 7, "high literacy row is not all types");
    ensure!(
        row(t.user_row(PrivacyAwareness)) == set(&["input_output", "why_why_not", "how"]),
        "privacy row is {:?}",
        row(t.user_row(PrivacyAwareness))
    );
    for g in SystemGoal::ALL {
        ensure!(t.system_row(*g).contains(ContentType::WhyWhyNot), "{g} row lacks why");
        ensure!(!t.system_row(*g).contains(ContentType::WhatIf), "{g} row has what-if");
    }
    for g in UserGoal::ALL {
        ensure!(t.user_row(*g).contains(ContentType::WhyWhyNot), "{g} row lacks why");
    }
    let v = t.check_invariants();
    ensure!(v.is_empty(), "table invariants: {v:?}");
    Ok(())
}
