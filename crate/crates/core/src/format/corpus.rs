//! Corpus directories: `<name>.xas` files, each optionally paired with a
//! `<name>.golden.json` holding the expected recommendation.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::path::Path;

use super::{parse_scenario, ParseError};
use crate::golden::GoldenRecommendation;
use crate::model::Scenario;

pub const SCENARIO_SUFFIX: &str = ".xas";
pub const GOLDEN_SUFFIX: &str = ".golden.json";

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    /// File name stem shared by the scenario and its golden.
    pub name: String,
    pub scenario: Scenario,
    pub golden: Option<GoldenRecommendation>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CorpusError {
    Parse { file: String, errors: Vec<ParseError> },
    BadGolden { file: String, message: String },
    DuplicateId { id: String, files: Vec<String> },
    OrphanGolden { file: String },
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::Parse { file, errors } => {
                write!(f, "{file}: {} parse error(s)", errors.len())?;
                for e in errors {
                    write!(f, "\n  {file}:{e}")?;
                }
                Ok(())
            }
            CorpusError::BadGolden { file, message } => write!(f, "{file}: bad golden: {message}"),
            CorpusError::DuplicateId { id, files } => {
                write!(f, "duplicate scenario id `{id}` in {}", files.join(", "))
            }
            CorpusError::OrphanGolden { file } => write!(f, "{file}: golden without a scenario"),
        }
    }
}

impl std::error::Error for CorpusError {}

/// Pairs scenarios with goldens by file stem. Files with other suffixes are
/// ignored. All problems are reported together.
pub fn load_corpus(files: &[(String, String)]) -> Result<Vec<CorpusEntry>, Vec<CorpusError>> {
    let mut errors = Vec::new();
    let mut scenarios: BTreeMap<&str, (String, Scenario)> = BTreeMap::new();
    let mut goldens: BTreeMap<&str, (String, GoldenRecommendation)> = BTreeMap::new();

    for (file, text) in files {
        if let Some(stem) = file.strip_suffix(GOLDEN_SUFFIX) {
            match serde_json::from_str::<GoldenRecommendation>(text) {
                Ok(g) => {
                    goldens.insert(stem, (file.clone(), g));
                }
                Err(e) => errors.push(CorpusError::BadGolden {
                    file: file.clone(),
                    message: e.to_string(),
                }),
            }
        } else if let Some(stem) = file.strip_suffix(SCENARIO_SUFFIX) {
            match parse_scenario(text) {
                Ok(s) => {
                    scenarios.insert(stem, (file.clone(), s));
                }
                Err(errs) => errors.push(CorpusError::Parse {
                    file: file.clone(),
                    errors: errs,
                }),
            }
        }
    }

    let mut by_id: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for (file, s) in scenarios.values() {
        by_id.entry(s.id.as_str()).or_default().push(file.clone());
    }
    for (id, files) in by_id {
        if files.len() > 1 {
            errors.push(CorpusError::DuplicateId {
                id: id.to_string(),
                files,
            });
        }
    }
    for (stem, (file, _)) in &goldens {
        if !scenarios.contains_key(stem) {
            errors.push(CorpusError::OrphanGolden { file: file.clone() });
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    Ok(scenarios
        .into_iter()
        .map(|(stem, (_, scenario))| CorpusEntry {
            name: stem.to_string(),
            scenario,
            golden: goldens.remove(stem).map(|(_, g)| g),
        })
        .collect())
}

/// Reads the scenario and golden files of `dir`, sorted by name.
pub fn read_corpus_dir(dir: &Path) -> io::Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        let Ok(name) = entry.file_name().into_string() else {
            continue;
        };
        if !(name.ends_with(SCENARIO_SUFFIX) || name.ends_with(GOLDEN_SUFFIX)) || !entry.file_type()?.is_file() {
            continue;
        }
        out.push((name, std::fs::read_to_string(entry.path())?));
    }
    out.sort();
    Ok(out)
}
