//! Text formats: `.xas` scenarios, template packs and corpus directories.

mod corpus;
mod error;
pub(crate) mod kv;
pub(crate) mod reader;
mod scenario;

pub use corpus::{load_corpus, read_corpus_dir, CorpusEntry, CorpusError, GOLDEN_SUFFIX, SCENARIO_SUFFIX};
pub use error::{ParseError, ParseErrorKind, SourceSpan};
pub use scenario::{parse_scenario, serialize_scenario, SECTIONS};
