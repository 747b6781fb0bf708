//! Vocabulary for state, subject and number-word matching.
//!
//! The builtin lexicon is a curated stand-in covering seven Indian state
//! boards (Bihar, Delhi, Gujarat, Haryana, Jharkhand, Uttarakhand, Uttar
//! Pradesh) plus a generic subject list used when no state is recognized.
//! Board-issued subject lists vary by year and stream, so extend it with a
//! custom file where needed.

mod matching;
mod segment;
mod similarity;

pub use matching::{
    correct_subject, detect_state, match_subjects, MatchConfig, MatchOutcome, MatchVia,
    SubjectMatch,
};
pub use segment::segment_merged;
pub use similarity::{levenshtein, similarity};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

/// Fallback state name when no state scores above threshold.
pub const OTHER_STATE: &str = "Other";

const BUILTIN_LEXICON: &str = include_str!("../../data/lexicon.json");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("lexicon json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid lexicon: {0}")]
    Invalid(String),
}

/// Uppercases, turns every character other than letters, digits and hyphens
/// into a space, collapses whitespace runs and trims.
pub fn normalize(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for ch in text.chars() {
        if ch.is_alphanumeric() || ch == '-' {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.extend(ch.to_uppercase());
        } else {
            pending_space = true;
        }
    }
    out
}

/// A canonical subject with its accepted spellings, all normalized.
/// `aliases` always contains the canonical name first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subject {
    pub canonical: String,
    pub aliases: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateEntry {
    pub name: String,
    /// Normalized form of `name` used for matching.
    pub key: String,
    pub subjects: Vec<Subject>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    states: Vec<StateEntry>,
    default_subjects: Vec<Subject>,
    number_words: BTreeMap<String, u8>,
}

#[derive(Deserialize)]
struct WireLexicon {
    states: Vec<WireState>,
    default_subjects: Vec<WireSubject>,
    number_words: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
struct WireState {
    name: String,
    subjects: Vec<WireSubject>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WireSubject {
    Bare(String),
    Full {
        canonical: String,
        #[serde(default)]
        aliases: Vec<String>,
    },
}

fn build_subjects(owner: &str, wire: Vec<WireSubject>) -> Result<Vec<Subject>, LexiconError> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for item in wire {
        let (canonical, aliases) = match item {
            WireSubject::Bare(c) => (c, vec![]),
            WireSubject::Full { canonical, aliases } => (canonical, aliases),
        };
        let canonical = normalize(&canonical);
        if canonical.is_empty() {
            return Err(LexiconError::Invalid(format!("{owner}: empty subject name")));
        }
        let mut all = vec![canonical.clone()];
        for a in aliases {
            let a = normalize(&a);
            if !a.is_empty() && !all.contains(&a) {
                all.push(a);
            }
        }
        for a in &all {
            if let Some(prev) = seen.insert(a.clone(), canonical.clone()) {
                return Err(LexiconError::Invalid(format!(
                    "{owner}: spelling {a:?} maps to both {prev:?} and {canonical:?}"
                )));
            }
        }
        out.push(Subject {
            canonical,
            aliases: all,
        });
    }
    Ok(out)
}

impl Lexicon {
    pub fn from_json(bytes: &[u8]) -> Result<Self, LexiconError> {
        let wire: WireLexicon = serde_json::from_slice(bytes)?;
        let mut keys = BTreeSet::new();
        let mut states = Vec::new();
        for s in wire.states {
            let key = normalize(&s.name);
            if key.is_empty() || key == normalize(OTHER_STATE) {
                return Err(LexiconError::Invalid(format!("bad state name {:?}", s.name)));
            }
            if !keys.insert(key.clone()) {
                return Err(LexiconError::Invalid(format!("duplicate state {:?}", s.name)));
            }
            let subjects = build_subjects(&s.name, s.subjects)?;
            states.push(StateEntry {
                name: s.name.trim().to_string(),
                key,
                subjects,
            });
        }
        let default_subjects = build_subjects(OTHER_STATE, wire.default_subjects)?;
        if default_subjects.is_empty() {
            return Err(LexiconError::Invalid("default_subjects is empty".into()));
        }
        let mut number_words = BTreeMap::new();
        for (w, v) in wire.number_words {
            let key = normalize(&w);
            if key.is_empty() || key.contains(' ') || key.contains('-') {
                return Err(LexiconError::Invalid(format!("bad number word {w:?}")));
            }
            let v = u8::try_from(v)
                .ok()
                .filter(|v| *v <= 100)
                .ok_or_else(|| LexiconError::Invalid(format!("number word {w:?} value {v} > 100")))?;
            number_words.insert(key, v);
        }
        Ok(Self {
            states,
            default_subjects,
            number_words,
        })
    }

    /// The lexicon shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN_LEXICON.as_bytes()).expect("builtin lexicon is valid")
    }

    pub fn states(&self) -> &[StateEntry] {
        &self.states
    }

    pub fn default_subjects(&self) -> &[Subject] {
        &self.default_subjects
    }

    /// Subjects of `state`; unknown names and [`OTHER_STATE`] get the defaults.
    pub fn subjects_for(&self, state: &str) -> &[Subject] {
        let key = normalize(state);
        self.states
            .iter()
            .find(|s| s.key == key)
            .map(|s| s.subjects.as_slice())
            .unwrap_or(&self.default_subjects)
    }

    /// Distinct words appearing in the state's subject spellings, sorted.
    pub fn subject_vocabulary(&self, state: &str) -> Vec<String> {
        let words: BTreeSet<&str> = self
            .subjects_for(state)
            .iter()
            .flat_map(|s| s.aliases.iter())
            .flat_map(|a| a.split(' '))
            .collect();
        words.into_iter().map(String::from).collect()
    }

    pub fn number_words(&self) -> &BTreeMap<String, u8> {
        &self.number_words
    }
}
