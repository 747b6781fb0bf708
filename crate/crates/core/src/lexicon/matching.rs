use super::segment::segment_merged;
use super::similarity::similarity;
use super::{normalize, Lexicon, Subject, OTHER_STATE};
use crate::diagnostic::Diagnostic;
use crate::layout::TextLine;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Tokens shorter than this are never tried as merged words.
const MIN_SEGMENTABLE_LEN: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct MatchConfig {
    pub state_threshold: f64,
    pub subject_threshold: f64,
    pub max_segments: usize,
    /// Fuzzy subject correction and merged-word segmentation. When off only
    /// exact spellings match subjects; state detection is unaffected.
    pub spell_correction: bool,
}

impl Default for MatchConfig {
    fn default() -> Self {
        Self {
            state_threshold: 0.80,
            subject_threshold: 0.80,
            max_segments: 3,
            spell_correction: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchVia {
    /// A single token spelled exactly like a subject alias.
    Exact,
    /// Two adjacent tokens together spelled exactly like an alias.
    Bigram,
    /// Closest alias above threshold, on one token or a token pair.
    SpellCorrected,
    /// A token split into words first, then matched.
    Segmented,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectMatch {
    pub canonical_subject: String,
    pub line_index: usize,
    /// Positions within the line of the token(s) that matched.
    pub token_indices: Vec<usize>,
    pub score: f64,
    pub via: MatchVia,
}

impl SubjectMatch {
    /// Last token of the subject name; marks are read to the right of it.
    pub fn anchor_end(&self) -> usize {
        *self.token_indices.last().expect("match covers at least one token")
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MatchOutcome {
    pub matches: Vec<SubjectMatch>,
    pub diagnostics: Vec<Diagnostic>,
}

struct Word {
    index: usize,
    text: String,
    /// Digits, or a state name: never part of a subject n-gram.
    excluded: bool,
}

fn line_words(line: &TextLine) -> Vec<Word> {
    line.tokens
        .iter()
        .enumerate()
        .filter_map(|(index, t)| {
            let text = normalize(&t.text);
            if text.is_empty() {
                return None;
            }
            let numeric = text.chars().all(|c| c.is_ascii_digit() || c == ' ' || c == '-');
            Some(Word {
                index,
                text,
                excluded: numeric,
            })
        })
        .collect()
}

/// Scores one candidate phrase against every state; keeps the first best.
fn best_state<'a>(
    lexicon: &'a Lexicon,
    phrase: &str,
    best: &mut Option<(f64, &'a str)>,
) {
    for state in lexicon.states() {
        let s = similarity(phrase, &state.key);
        if best.is_none_or(|(b, _)| s > b) {
            *best = Some((s, &state.name));
        }
    }
}

/// Word-bigram pass, then single-token pass, then [`OTHER_STATE`].
pub fn detect_state(lines: &[TextLine], lexicon: &Lexicon, config: &MatchConfig) -> String {
    let words: Vec<Vec<Word>> = lines.iter().map(line_words).collect();

    let mut best = None;
    for line in &words {
        for pair in line.windows(2) {
            best_state(lexicon, &format!("{} {}", pair[0].text, pair[1].text), &mut best);
        }
    }
    if let Some((s, name)) = best {
        if s >= config.state_threshold {
            return name.to_string();
        }
    }

    let mut best = None;
    for w in words.iter().flatten() {
        best_state(lexicon, &w.text, &mut best);
    }
    match best {
        Some((s, name)) if s >= config.state_threshold => name.to_string(),
        _ => OTHER_STATE.to_string(),
    }
}

/// Closest alias to the space-joined words, if it clears the threshold.
/// Returns the alias's canonical subject and the score.
pub fn correct_subject<S: AsRef<str>>(
    words: &[S],
    subjects: &[Subject],
    config: &MatchConfig,
) -> Option<(String, f64)> {
    let phrase = words.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" ");
    let mut best: Option<(&str, f64)> = None;
    for subject in subjects {
        for alias in &subject.aliases {
            let s = similarity(&phrase, alias);
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((&subject.canonical, s));
            }
        }
    }
    best.filter(|(_, s)| *s >= config.subject_threshold)
        .map(|(c, s)| (c.to_string(), s))
}

fn exact_alias<'a>(subjects: &'a [Subject], phrase: &str) -> Option<&'a Subject> {
    subjects.iter().find(|s| s.aliases.iter().any(|a| a == phrase))
}

fn match_line(
    words: &[Word],
    subjects: &[Subject],
    vocabulary: &[String],
    config: &MatchConfig,
) -> Option<(String, Vec<usize>, f64, MatchVia)> {
    for pair in words.windows(2) {
        if pair[0].excluded || pair[1].excluded {
            continue;
        }
        let phrase = format!("{} {}", pair[0].text, pair[1].text);
        let span = vec![pair[0].index, pair[1].index];
        if let Some(s) = exact_alias(subjects, &phrase) {
            return Some((s.canonical.clone(), span, 1.0, MatchVia::Bigram));
        }
        if config.spell_correction {
            if let Some((c, score)) = correct_subject(&[phrase], subjects, config) {
                return Some((c, span, score, MatchVia::SpellCorrected));
            }
        }
    }
    for w in words.iter().filter(|w| !w.excluded) {
        if let Some(s) = exact_alias(subjects, &w.text) {
            return Some((s.canonical.clone(), vec![w.index], 1.0, MatchVia::Exact));
        }
        if !config.spell_correction {
            continue;
        }
        if w.text.chars().count() >= MIN_SEGMENTABLE_LEN && !w.text.contains(' ') {
            let parts = segment_merged(&w.text, vocabulary, config);
            if parts.len() > 1 {
                if let Some((c, score)) = correct_subject(&parts, subjects, config) {
                    return Some((c, vec![w.index], score, MatchVia::Segmented));
                }
            }
        }
        if let Some((c, score)) = correct_subject(&[&w.text], subjects, config) {
            return Some((c, vec![w.index], score, MatchVia::SpellCorrected));
        }
    }
    None
}

/// At most one subject per line (the leftmost qualifying n-gram, bigrams
/// before single tokens) and at most one line per subject.
pub fn match_subjects(
    lines: &[TextLine],
    state: &str,
    lexicon: &Lexicon,
    config: &MatchConfig,
) -> MatchOutcome {
    let subjects = lexicon.subjects_for(state);
    let vocabulary = lexicon.subject_vocabulary(state);
    let mut first_line: HashMap<String, usize> = HashMap::new();
    let mut out = MatchOutcome::default();

    for (line_index, line) in lines.iter().enumerate() {
        let mut words = line_words(line);
        for w in &mut words {
            // "GUJARAT" would otherwise spell-correct to the GUJARATI alias
            if lexicon.states().iter().any(|s| s.key == w.text) {
                w.excluded = true;
            }
        }
        let Some((canonical, token_indices, score, via)) =
            match_line(&words, subjects, &vocabulary, config)
        else {
            continue;
        };
        if let Some(&first) = first_line.get(&canonical) {
            out.diagnostics.push(Diagnostic::DuplicateSubject {
                subject: canonical,
                line_index,
                first_line_index: first,
            });
            continue;
        }
        first_line.insert(canonical.clone(), line_index);
        out.matches.push(SubjectMatch {
            canonical_subject: canonical,
            line_index,
            token_indices,
            score,
            via,
        });
    }
    out
}
