//! Engine properties as runnable checks. Randomized checks take a case count;
//! grid checks enumerate every combination.

use std::collections::BTreeMap;

use arxai_core::engine::*;
use arxai_core::format::{parse_scenario, serialize_scenario};
use arxai_core::model::*;
use arxai_core::templates::TemplateRegistry;
use proptest::prelude::*;
use proptest::test_runner::{TestCaseResult, TestRunner};

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> TestCaseResult) -> Result<(), String> {
    let config = ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    };
    TestRunner::new(config).run(&strategy, test).map_err(|e| e.to_string())
}

fn rec(s: &Scenario) -> Result<DesignRecommendation, TestCaseError> {
    recommend(s).map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn availability(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |s| {
        prop_assert_eq!(rec(&s)?.availability, Availability::Available);
        Ok(())
    })
}

pub fn high_load_forces_manual(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |mut s| {
        s.user_state.cognitive_load = LoadLevel::High;
        prop_assert_eq!(rec(&s)?.delivery.mode, DeliveryMode::ManualTrigger);
        Ok(())
    })
}

pub fn goal_monotonicity(cases: u32) -> Result<(), String> {
    let strategy = (
        super::scenario(),
        prop::sample::select(SystemGoal::ALL),
        prop::sample::select(UserGoal::ALL),
    );
    run(cases, strategy, |(s, sg, ug)| {
        let t = DecisionTable::canonical();
        let content = |s: &Scenario| select_content(s, t).map(|d| d.value).map_err(|e| TestCaseError::fail(e.to_string()));
        let before = content(&s)?;
        let mut more = s.clone();
        more.system_goals.insert(sg);
        prop_assert!(before.is_subset(content(&more)?));
        let mut more = s;
        more.user_goals.insert(ug);
        prop_assert!(before.is_subset(content(&more)?));
        Ok(())
    })
}

pub fn literacy_monotonicity(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |mut s| {
        s.profile.ai_literacy = AiLiteracy::Low;
        let low = rec(&s)?.content;
        s.profile.ai_literacy = AiLiteracy::High;
        prop_assert!(low.is_subset(rec(&s)?.content));
        Ok(())
    })
}

pub fn concise_within_detailed(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |s| {
        let r = rec(&s)?;
        prop_assert!(r.detail.concise.is_subset(r.detail.detailed));
        prop_assert!(r.detail.concise.contains(ContentType::WhyWhyNot));
        prop_assert!(r.detail.expansion_affordance);
        prop_assert_eq!(r.content, r.detail.detailed);
        Ok(())
    })
}

pub fn never_haptic(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |s| {
        let r = rec(&s)?;
        prop_assert!(matches!(r.explanation_modality, Modality::Visual | Modality::Audio));
        prop_assert!(matches!(r.delivery.trigger_modality, Modality::Visual | Modality::Audio));
        Ok(())
    })
}

fn anchors_sound(s: &Scenario, r: &DesignRecommendation, reg: &TemplateRegistry) -> TestCaseResult {
    let traits = reg.fragment_traits(&s.domain);
    for (t, p) in &r.paradigm.fragment_patterns {
        if *p == Pattern::Implicit {
            let a = traits.get(t).and_then(|x| x.anchor.as_ref());
            prop_assert!(
                a.is_some_and(|a| s.context.environment.contains(a) || s.ai_output.anchors.contains(a)),
                "{t} implicit without a visible anchor"
            );
        }
    }
    prop_assert_eq!(r.paradigm.fragment_patterns.keys().copied().collect::<ContentTypeSet>(), r.detail.detailed);
    Ok(())
}

/// Attaches a random anchor to every template so both outcomes occur.
pub fn implicit_anchor_soundness(cases: u32) -> Result<(), String> {
    run(cases, (super::scenario(), "[a-z]{1,6}", any::<bool>()), |(mut s, anchor, in_scene)| {
        let mut reg = TemplateRegistry::builtin().clone();
        for t in ContentType::ALL {
            let mut tpl = reg.lookup(*t, &s.domain).unwrap().clone();
            tpl.domain = s.domain.clone();
            tpl.anchor = Some(anchor.clone());
            reg.register(tpl).unwrap();
        }
        if in_scene {
            s.context.environment.insert(anchor.clone());
        }
        let r = recommend_with(&s, DecisionTable::canonical(), &reg).map_err(|e| TestCaseError::fail(e.to_string()))?;
        anchors_sound(&s, &r, &reg)?;
        if in_scene && r.paradigm.applicable {
            prop_assert!(r.paradigm.fragment_patterns.values().all(|p| *p == Pattern::Implicit));
        }
        Ok(())
    })
}

pub fn implicit_soundness_shipped(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |s| anchors_sound(&s, &rec(&s)?, TemplateRegistry::builtin()))
}

pub fn determinism(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |s| {
        let a = serde_json::to_string(&rec(&s)?).unwrap();
        let b = serde_json::to_string(&rec(&s.clone())?).unwrap();
        prop_assert_eq!(a, b);
        Ok(())
    })
}

pub fn rationale_order(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |s| {
        let r = rec(&s)?;
        let order: Vec<Guideline> = r.rationale.iter().map(|e| e.guideline).collect();
        prop_assert_eq!(order, Guideline::ALL.to_vec());
        prop_assert!(r.rationale.iter().all(|e| !e.reason.is_empty()));
        Ok(())
    })
}

/// Delivery against a restatement of the trigger rule.
pub fn delivery_predicate(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |s| {
        let band = match s.ai_output.confidence {
            Confidence::Band(b) => b,
            Confidence::Score(x) if x < 0.5 => ConfidenceBand::Low,
            Confidence::Score(x) if x < 0.9 => ConfidenceBand::Medium,
            Confidence::Score(_) => ConfidenceBand::High,
        };
        let u = &s.user_state;
        let capacity = u.cognitive_load != LoadLevel::High && u.time_urgency != LoadLevel::High;
        let need = u.surprised || u.confused || !s.profile.familiar_with_outcome || band != ConfidenceBand::High;
        let expected = if capacity && need { DeliveryMode::AutoTrigger } else { DeliveryMode::ManualTrigger };
        let r = rec(&s)?;
        prop_assert_eq!(r.delivery.mode, expected);
        prop_assert_eq!(r.confirmation_required, band == ConfidenceBand::Low);
        Ok(())
    })
}

pub fn whatif_self_diff(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |s| {
        prop_assert!(whatif_diff(&s, &s).unwrap().is_empty());
        Ok(())
    })
}

pub fn whatif_attribution(cases: u32) -> Result<(), String> {
    run(cases, (super::scenario(), super::scenario()), |(a, b)| {
        let d = whatif_diff(&a, &b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let ra = serde_json::to_value(rec(&a)?).unwrap();
        let rb = serde_json::to_value(rec(&b)?).unwrap();
        for f in &d.differences {
            prop_assert_ne!(&ra[&f.field], &rb[&f.field]);
            for factor in &f.attribution {
                let hv = serde_json::to_value(rec(&factor.substitute(&a, &b))?).unwrap();
                prop_assert_ne!(&hv[&f.field], &ra[&f.field]);
            }
        }
        Ok(())
    })
}

pub fn parser_round_trip(cases: u32) -> Result<(), String> {
    run(cases, super::scenario(), |s| {
        let text = serialize_scenario(&s);
        let back = parse_scenario(&text).map_err(|e| TestCaseError::fail(format!("{e:?}\n{text}")))?;
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(serialize_scenario(&back), text);
        Ok(())
    })
}

/// Randomized check taking a case count.
pub type Randomized = fn(u32) -> Result<(), String>;
/// Grid check.
pub type Exhaustive = fn() -> Result<(), String>;

/// (name, check) for every randomized property.
pub const RANDOMIZED: &[(&str, Randomized)] = &[
    ("availability invariance", availability),
    ("capacity dominance", high_load_forces_manual),
    ("goal monotonicity", goal_monotonicity),
    ("literacy monotonicity", literacy_monotonicity),
    ("concise within detailed, why in concise", concise_within_detailed),
    ("modality in {visual, audio}", never_haptic),
    ("implicit anchor soundness (random anchors)", implicit_anchor_soundness),
    ("implicit anchor soundness (shipped templates)", implicit_soundness_shipped),
    ("recommend determinism", determinism),
    ("rationale order", rationale_order),
    ("delivery predicate", delivery_predicate),
    ("what-if self diff empty", whatif_self_diff),
    ("what-if attribution soundness", whatif_attribution),
    ("parser round-trip", parser_round_trip),
];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Every combination of the enum-valued fields with cognitive load fixed high:
/// 3 urgencies x 2^4 flags x 3 bands x 3 modalities x 3 x 3 loads x 2 literacies.
pub fn capacity_dominance_exhaustive() -> Result<(), String> {
    let mut count = 0;
    let mut s = super::base();
    s.user_state.cognitive_load = LoadLevel::High;
    for urgency in LoadLevel::ALL {
        for flags in 0..16u8 {
            for band in ConfidenceBand::ALL {
                for modality in Modality::ALL {
                    for vl in LoadLevel::ALL {
                        for al in LoadLevel::ALL {
                            for lit in AiLiteracy::ALL {
                                s.user_state.time_urgency = *urgency;
                                s.user_state.surprised = flags & 1 != 0;
                                s.user_state.confused = flags & 2 != 0;
                                s.user_state.hands_busy = flags & 4 != 0;
                                s.profile.familiar_with_outcome = flags & 8 != 0;
                                s.ai_output.confidence = Confidence::Band(*band);
                                s.ai_output.modality = *modality;
                                s.context.visual_load = *vl;
                                s.context.audio_load = *al;
                                s.profile.ai_literacy = *lit;
                                let r = recommend(&s).map_err(|e| e.to_string())?;
                                ensure!(r.delivery.mode == DeliveryMode::ManualTrigger, "auto under high load: {s:?}");
                                ensure!(r.explanation_modality != Modality::Haptic, "haptic: {s:?}");
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    ensure!(count == 7776, "enumerated {count}");
    Ok(())
}

/// All 15 x 15 goal subsets at both literacies.
pub fn monotonicity_exhaustive() -> Result<(), String> {
    let t = DecisionTable::canonical();
    let systems = super::nonempty_subsets(SystemGoal::ALL);
    let users = super::nonempty_subsets(UserGoal::ALL);
    let mut s = super::base();
    let mut results = BTreeMap::new();
    for sys in &systems {
        for usr in &users {
            for lit in AiLiteracy::ALL {
                s.system_goals = sys.clone();
                s.user_goals = usr.clone();
                s.profile.ai_literacy = *lit;
                let r = recommend(&s).map_err(|e| e.to_string())?;
                ensure!(r.detail.concise.is_subset(r.detail.detailed), "concise escapes detailed: {sys:?} {usr:?}");
                ensure!(r.detail.concise.contains(ContentType::WhyWhyNot), "no why: {sys:?} {usr:?}");
                results.insert((sys.clone(), usr.clone(), *lit), select_content(&s, t).map_err(|e| e.to_string())?.value);
            }
        }
    }
    ensure!(results.len() == 450, "enumerated {}", results.len());
    for ((sys, usr, lit), content) in &results {
        if *lit == AiLiteracy::Low {
            ensure!(content.is_subset(results[&(sys.clone(), usr.clone(), AiLiteracy::High)]), "literacy: {sys:?} {usr:?}");
        }
        for sys2 in systems.iter().filter(|x| sys.is_subset(x)) {
            ensure!(content.is_subset(results[&(sys2.clone(), usr.clone(), *lit)]), "system goals: {sys:?} < {sys2:?}");
        }
        for usr2 in users.iter().filter(|x| usr.is_subset(x)) {
            ensure!(content.is_subset(results[&(sys.clone(), usr2.clone(), *lit)]), "user goals: {usr:?} < {usr2:?}");
        }
    }
    Ok(())
}

/// Modality over its full grid: 3 output modalities x 3 visual x 3 audio loads.
pub fn modality_grid() -> Result<(), String> {
    let mut s = super::base();
    for m in Modality::ALL {
        for vl in LoadLevel::ALL {
            for al in LoadLevel::ALL {
                s.ai_output.modality = *m;
                s.context.visual_load = *vl;
                s.context.audio_load = *al;
                let base = if *m == Modality::Haptic { Modality::Audio } else { *m };
                let expected = match base {
                    Modality::Visual if *vl == LoadLevel::High => Modality::Audio,
                    Modality::Audio if *al == LoadLevel::High => Modality::Visual,
                    other => other,
                };
                let got = decide_modality(&s).value;
                ensure!(got == expected, "{m} {vl} {al}: got {got}, expected {expected}");
            }
        }
    }
    Ok(())
}

pub const EXHAUSTIVE: &[(&str, Exhaustive)] = &[
    ("capacity dominance (7776-case grid)", capacity_dominance_exhaustive),
    ("goal and literacy monotonicity (450-case grid)", monotonicity_exhaustive),
    ("modality (27-case grid)", modality_grid),
];
