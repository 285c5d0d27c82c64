//! The `.xas` scenario file format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::error::{ParseError, ParseErrorKind, SourceSpan};
use super::kv::{self, quote, quote_list, Section, Value};
use super::reader::SectionReader;
use crate::model::{
    fold_label, AiLiteracy, AiOutput, Confidence, ConfidenceBand, ContextualInfo, LoadLevel,
    Modality, Scenario, SystemGoal, UserGoal, UserProfile, UserState, GENERIC_DOMAIN,
};

/// Sections in canonical order, with whether each is required.
pub const SECTIONS: &[(&str, bool)] = &[
    ("scenario", true),
    ("user_state", true),
    ("context", true),
    ("goals", true),
    ("profile", true),
    ("ai_output", true),
    ("facts", false),
];

const SCENARIO_KEYS: &[&str] = &["version", "id", "domain"];
const USER_STATE_KEYS: &[&str] = &[
    "activity",
    "cognitive_load",
    "time_urgency",
    "surprised",
    "confused",
    "hands_busy",
];
const CONTEXT_KEYS: &[&str] = &["location", "time_of_day", "environment", "visual_load", "audio_load"];
const GOALS_KEYS: &[&str] = &["system", "user"];
const PROFILE_KEYS: &[&str] = &["ai_literacy", "familiar_with_outcome"];
const AI_OUTPUT_KEYS: &[&str] = &["modality", "description", "confidence", "anchors"];
const FACTS_KEYS: &[&str] = &["*"];

/// Parses a scenario, reporting every error found in one pass.
pub fn parse_scenario(text: &str) -> Result<Scenario, Vec<ParseError>> {
    let (doc, mut errors) = kv::parse_document(text);

    let mut by_name: BTreeMap<&str, &Section> = BTreeMap::new();
    for section in &doc.sections {
        if !SECTIONS.iter().any(|(name, _)| *name == section.name) {
            errors.push(ParseError::new(
                section.span,
                ParseErrorKind::UnknownSection,
                format!(
                    "unknown section [{}], expected one of: {}",
                    section.name,
                    SECTIONS.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
                ),
            ));
            continue;
        }
        if by_name.insert(section.name.as_str(), section).is_some() {
            errors.push(ParseError::new(
                section.span,
                ParseErrorKind::DuplicateKey,
                format!("section [{}] appears more than once", section.name),
            ));
        }
    }
    let eof = SourceSpan::new(text.lines().count().max(1), 1);
    for (name, required) in SECTIONS {
        if *required && !by_name.contains_key(name) {
            errors.push(ParseError::new(
                eof,
                ParseErrorKind::MissingSection,
                format!("missing required section [{name}]"),
            ));
        }
    }

    let header = by_name.get("scenario").map(|s| read_header(s, &mut errors));
    let user_state = by_name.get("user_state").and_then(|s| read_user_state(s, &mut errors));
    let context = by_name.get("context").and_then(|s| read_context(s, &mut errors));
    let goals = by_name.get("goals").and_then(|s| read_goals(s, &mut errors));
    let profile = by_name.get("profile").and_then(|s| read_profile(s, &mut errors));
    let ai_output = by_name.get("ai_output").and_then(|s| read_ai_output(s, &mut errors));
    let facts = by_name.get("facts").map(|s| read_facts(s, &mut errors)).unwrap_or_default();

    if !errors.is_empty() {
        errors.sort_by_key(|e| e.span);
        return Err(errors);
    }
    match (header, user_state, context, goals, profile, ai_output) {
        (
            Some(Some((id, version, domain))),
            Some(user_state),
            Some(context),
            Some((system_goals, user_goals)),
            Some(profile),
            Some(ai_output),
        ) => Ok(Scenario {
            id,
            version,
            domain,
            user_state,
            context,
            system_goals,
            user_goals,
            profile,
            ai_output,
            facts,
        }),
        // every None path above pushed at least one error
        _ => unreachable!("section reader returned None without reporting an error"),
    }
}

fn collect(reader: SectionReader<'_>, errors: &mut Vec<ParseError>) {
    errors.extend(reader.finish());
}

fn read_header(section: &Section, errors: &mut Vec<ParseError>) -> Option<(String, u32, String)> {
    let mut r = SectionReader::new(section, SCENARIO_KEYS, &[]);
    let id = r.string("id", true);
    if let Some(id) = &id {
        if id.trim().is_empty() {
            let entry = r.entry("id").expect("present");
            r.reject(entry, "id must be nonempty");
        }
    }
    let version = match r.entry("version") {
        Some(entry) => match r.number(entry) {
            Some(1.0) => Some(1),
            Some(v) => {
                r.reject(entry, format!("unsupported version {v}, expected 1"));
                None
            }
            None => None,
        },
        None => Some(1),
    };
    let domain = match r.entry("domain") {
        Some(entry) => match &entry.value {
            Value::Str(s) | Value::Token(s) if !s.trim().is_empty() => Some(s.clone()),
            _ => {
                r.reject(entry, "expected a nonempty domain tag");
                None
            }
        },
        None => Some(GENERIC_DOMAIN.to_string()),
    };
    let ok = r.errors.is_empty();
    collect(r, errors);
    match (id, version, domain) {
        (Some(id), Some(v), Some(d)) if ok => Some((id, v, d)),
        _ => None,
    }
}

fn load(r: &mut SectionReader<'_>, key: &str, required: bool) -> Option<LoadLevel> {
    r.token(key, required, LoadLevel::from_token, &LoadLevel::tokens())
}

fn read_user_state(section: &Section, errors: &mut Vec<ParseError>) -> Option<UserState> {
    let mut r = SectionReader::new(section, USER_STATE_KEYS, &[]);
    let activity = r.string("activity", true);
    let cognitive_load = load(&mut r, "cognitive_load", true);
    let time_urgency = load(&mut r, "time_urgency", false);
    let surprised = r.boolean("surprised", false);
    let confused = r.boolean("confused", false);
    let hands_busy = r.boolean("hands_busy", false);
    let ok = r.errors.is_empty();
    collect(r, errors);
    if !ok {
        return None;
    }
    Some(UserState {
        activity: activity?,
        cognitive_load: cognitive_load?,
        time_urgency: time_urgency.unwrap_or_default(),
        surprised,
        confused,
        hands_busy,
    })
}

fn labels(items: Vec<String>) -> BTreeSet<String> {
    items.iter().map(|s| fold_label(s)).filter(|s| !s.is_empty()).collect()
}

fn read_context(section: &Section, errors: &mut Vec<ParseError>) -> Option<ContextualInfo> {
    let mut r = SectionReader::new(section, CONTEXT_KEYS, &[]);
    let location = r.string("location", true);
    let time_of_day = r.string("time_of_day", true);
    let environment = r.list("environment", false);
    let visual_load = load(&mut r, "visual_load", false);
    let audio_load = load(&mut r, "audio_load", false);
    let ok = r.errors.is_empty();
    collect(r, errors);
    if !ok {
        return None;
    }
    Some(ContextualInfo {
        location: location?,
        time_of_day: time_of_day?,
        environment: labels(environment.unwrap_or_default()),
        visual_load: visual_load.unwrap_or_default(),
        audio_load: audio_load.unwrap_or_default(),
    })
}

fn read_goals(
    section: &Section,
    errors: &mut Vec<ParseError>,
) -> Option<(BTreeSet<SystemGoal>, BTreeSet<UserGoal>)> {
    let mut r = SectionReader::new(section, GOALS_KEYS, &[]);
    let system = r.token_list("system", SystemGoal::from_token, &SystemGoal::tokens());
    let user = r.token_list("user", UserGoal::from_token, &UserGoal::tokens());
    let ok = r.errors.is_empty();
    collect(r, errors);
    if !ok {
        return None;
    }
    Some((system?.into_iter().collect(), user?.into_iter().collect()))
}

fn read_profile(section: &Section, errors: &mut Vec<ParseError>) -> Option<UserProfile> {
    let mut r = SectionReader::new(section, PROFILE_KEYS, &["preference"]);
    let ai_literacy = r.token("ai_literacy", true, AiLiteracy::from_token, &AiLiteracy::tokens());
    let familiar_with_outcome = r.boolean("familiar_with_outcome", true);
    let mut preferences = BTreeMap::new();
    for (name, entry) in r.prefixed("preference") {
        if let Some(v) = r.string_value(entry) {
            preferences.insert(name.to_string(), v);
        }
    }
    let ok = r.errors.is_empty();
    collect(r, errors);
    if !ok {
        return None;
    }
    Some(UserProfile {
        ai_literacy: ai_literacy?,
        familiar_with_outcome,
        preferences,
    })
}

fn read_ai_output(section: &Section, errors: &mut Vec<ParseError>) -> Option<AiOutput> {
    let mut r = SectionReader::new(section, AI_OUTPUT_KEYS, &[]);
    let modality = r.token("modality", true, Modality::from_token, &Modality::tokens());
    let description = r.string("description", true);
    let confidence = match r.entry("confidence") {
        None => {
            r.missing("confidence");
            None
        }
        Some(entry) => match &entry.value {
            Value::Number(x) if (0.0..=1.0).contains(x) => Some(Confidence::Score(*x)),
            Value::Number(_) => {
                r.reject(entry, "confidence out of [0,1]");
                None
            }
            _ => r
                .token_value(entry, ConfidenceBand::from_token, &ConfidenceBand::tokens())
                .map(Confidence::Band),
        },
    };
    let anchors = r.list("anchors", false);
    let ok = r.errors.is_empty();
    collect(r, errors);
    if !ok {
        return None;
    }
    Some(AiOutput {
        modality: modality?,
        description: description?,
        confidence: confidence?,
        anchors: labels(anchors.unwrap_or_default()),
    })
}

fn read_facts(section: &Section, errors: &mut Vec<ParseError>) -> BTreeMap<String, String> {
    let mut r = SectionReader::new(section, FACTS_KEYS, &[]);
    let mut facts = BTreeMap::new();
    for entry in r.all() {
        if let Some(v) = r.string_value(entry) {
            facts.insert(entry.key.clone(), v);
        }
    }
    collect(r, errors);
    facts
}

fn is_bare_key(key: &str) -> bool {
    !key.is_empty()
        && key
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

/// Canonical text form. `parse_scenario(&serialize_scenario(s)) == Ok(s)` for
/// every valid scenario whose fact and preference keys are bare keys.
pub fn serialize_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "[scenario]");
    let _ = writeln!(w, "version = {}", s.version);
    let _ = writeln!(w, "id = {}", quote(&s.id));
    let _ = writeln!(w, "domain = {}", quote(&s.domain));

    let u = &s.user_state;
    let _ = writeln!(w, "\n[user_state]");
    let _ = writeln!(w, "activity = {}", quote(&u.activity));
    let _ = writeln!(w, "cognitive_load = {}", u.cognitive_load);
    let _ = writeln!(w, "time_urgency = {}", u.time_urgency);
    let _ = writeln!(w, "surprised = {}", u.surprised);
    let _ = writeln!(w, "confused = {}", u.confused);
    let _ = writeln!(w, "hands_busy = {}", u.hands_busy);

    let c = &s.context;
    let _ = writeln!(w, "\n[context]");
    let _ = writeln!(w, "location = {}", quote(&c.location));
    let _ = writeln!(w, "time_of_day = {}", quote(&c.time_of_day));
    let _ = writeln!(w, "environment = {}", quote_list(c.environment.iter().map(String::as_str)));
    let _ = writeln!(w, "visual_load = {}", c.visual_load);
    let _ = writeln!(w, "audio_load = {}", c.audio_load);

    let _ = writeln!(w, "\n[goals]");
    let _ = writeln!(w, "system = {}", quote_list(s.system_goals.iter().map(|g| g.token())));
    let _ = writeln!(w, "user = {}", quote_list(s.user_goals.iter().map(|g| g.token())));

    let p = &s.profile;
    let _ = writeln!(w, "\n[profile]");
    let _ = writeln!(w, "ai_literacy = {}", p.ai_literacy);
    let _ = writeln!(w, "familiar_with_outcome = {}", p.familiar_with_outcome);
    for (k, v) in &p.preferences {
        debug_assert!(is_bare_key(k));
        let _ = writeln!(w, "preference.{k} = {}", quote(v));
    }

    let a = &s.ai_output;
    let _ = writeln!(w, "\n[ai_output]");
    let _ = writeln!(w, "modality = {}", a.modality);
    let _ = writeln!(w, "description = {}", quote(&a.description));
    match a.confidence {
        Confidence::Score(x) => {
            let _ = writeln!(w, "confidence = {}", format_score(x));
        }
        Confidence::Band(b) => {
            let _ = writeln!(w, "confidence = {b}");
        }
    }
    let _ = writeln!(w, "anchors = {}", quote_list(a.anchors.iter().map(String::as_str)));

    if !s.facts.is_empty() {
        let _ = writeln!(w, "\n[facts]");
        for (k, v) in &s.facts {
            debug_assert!(is_bare_key(k));
            let _ = writeln!(w, "{k} = {}", quote(v));
        }
    }
    out
}

/// Shortest decimal that reparses to `x`, always with a fractional part.
fn format_score(x: f64) -> String {
    let s = format!("{x}");
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const JOGGING: &str = r#"
# route suggestion while jogging
[scenario]
version = 1
id = "scenario1"
domain = "route"

[user_state]
activity = "jogging"
cognitive_load = low
surprised = true

[context]
location = "outdoor"
time_of_day = "morning"
environment = ["Trail", "streets"]

[goals]
system = ["intent_discovery"]
user = ["resolve_surprise"]

[profile]
ai_literacy = high
preference.likes = "cherry blossom trees"

[ai_output]
modality = visual
description = "detour on a map"
confidence = 0.93
"#;

    #[test]
    fn parses_full_scenario_with_defaults() {
        let s = parse_scenario(JOGGING).unwrap();
        assert_eq!(s.system_goals, [SystemGoal::UserIntentDiscovery].into());
        assert_eq!(s.user_goals, [UserGoal::ResolveConfusionSurprise].into());
        assert_eq!(s.profile.ai_literacy, AiLiteracy::High);
        assert!(s.profile.familiar_with_outcome);
        assert_eq!(s.user_state.time_urgency, LoadLevel::Low);
        assert!(!s.user_state.hands_busy);
        assert_eq!(s.context.visual_load, LoadLevel::Low);
        assert!(s.context.environment.contains("trail"));
        assert_eq!(s.profile.preferences["likes"], "cherry blossom trees");
        assert_eq!(s.ai_output.confidence, Confidence::Score(0.93));
        assert!(s.facts.is_empty());
        assert!(crate::model::validate_scenario(&s).is_empty());
    }

    #[test]
    fn empty_file_reports_each_required_section() {
        let errs = parse_scenario("").unwrap_err();
        assert_eq!(errs.len(), 6);
        assert!(errs.iter().all(|e| e.kind == ParseErrorKind::MissingSection));
    }

    #[test]
    fn bad_load_names_legal_values() {
        let text = JOGGING.replace("cognitive_load = low", "cognitive_load = extreme");
        let errs = parse_scenario(&text).unwrap_err();
        assert_eq!(errs.len(), 1);
        let e = &errs[0];
        assert_eq!(e.kind, ParseErrorKind::BadValue);
        assert_eq!(e.span.line, 10);
        assert!(e.message.contains("{low, medium, high}"), "{}", e.message);
    }

    #[test]
    fn unknown_goal_lists_variants() {
        let text = JOGGING.replace("\"intent_discovery\"", "\"world_peace\"");
        let errs = parse_scenario(&text).unwrap_err();
        assert_eq!(errs[0].kind, ParseErrorKind::BadValue);
        for t in SystemGoal::tokens() {
            assert!(errs[0].message.contains(t));
        }
    }

    #[test]
    fn independent_faults_all_reported() {
        let text = JOGGING
            .replace("cognitive_load = low", "cognitive_load = extreme")
            .replace("ai_literacy = high", "ai_literacy = high\nai_literacy = low")
            .replace("confidence = 0.93", "confidence = 1.3")
            .replace("[context]", "[context]\nweather = \"sunny\"")
            .replace("[goals]", "[mood]\nx = 1\n[goals]");
        let errs = parse_scenario(&text).unwrap_err();
        let kinds: Vec<_> = errs.iter().map(|e| e.kind).collect();
        assert!(errs.len() >= 5, "{errs:?}");
        for k in [
            ParseErrorKind::BadValue,
            ParseErrorKind::DuplicateKey,
            ParseErrorKind::UnknownKey,
            ParseErrorKind::UnknownSection,
        ] {
            assert!(kinds.contains(&k), "{k:?} missing from {errs:?}");
        }
        assert!(errs.iter().any(|e| e.message.contains("confidence out of [0,1]")));
    }

    #[test]
    fn missing_key_and_empty_goal_list() {
        let text = JOGGING
            .replace("activity = \"jogging\"\n", "")
            .replace("user = [\"resolve_surprise\"]", "user = []");
        let errs = parse_scenario(&text).unwrap_err();
        assert_eq!(errs.len(), 2, "{errs:?}");
        assert!(errs.iter().any(|e| e.kind == ParseErrorKind::MissingKey));
        assert!(errs.iter().any(|e| e.message.contains("nonempty")));
    }

    #[test]
    fn crlf_input_parses_identically() {
        let crlf = JOGGING.replace('\n', "\r\n");
        assert_eq!(parse_scenario(&crlf).unwrap(), parse_scenario(JOGGING).unwrap());
    }

    #[test]
    fn declared_band_confidence() {
        let text = JOGGING.replace("confidence = 0.93", "confidence = medium");
        let s = parse_scenario(&text).unwrap();
        assert_eq!(s.ai_output.confidence, Confidence::Band(ConfidenceBand::Medium));
    }

    #[test]
    fn serialization_round_trips_and_is_canonical() {
        let s = parse_scenario(JOGGING).unwrap();
        let text = serialize_scenario(&s);
        assert_eq!(parse_scenario(&text).unwrap(), s);
        assert_eq!(serialize_scenario(&parse_scenario(&text).unwrap()), text);
        assert!(text.contains("user = [\"resolve_confusion_surprise\"]"));
        assert!(text.contains("confidence = 0.93\n"));
    }

    #[test]
    fn whole_number_scores_keep_a_fraction() {
        assert_eq!(format_score(1.0), "1.0");
        assert_eq!(format_score(0.0), "0.0");
        assert_eq!(format_score(0.5), "0.5");
    }
}
