//! Subject-wise mark extraction.
//!
//! Marks are read to the right of the matched subject name. Marks written in
//! words win over numerals; otherwise the largest numeral is taken, since the
//! total is never smaller than its theory and practical parts. All marks are
//! out of 100.

mod number_words;

pub use number_words::{parse_number_word, NumberWords};

use crate::diagnostic::Diagnostic;
use crate::layout::TextLine;
use crate::lexicon::{normalize, Lexicon, MatchVia, SubjectMatch};
use serde::{Deserialize, Serialize};

pub const MAX_MARK: u8 = 100;

/// A mark at or below this value counts towards the grade-sheet heuristic.
const GRADE_CEILING: u8 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateSource {
    Numeral,
    Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkCandidate {
    pub value: u8,
    pub source: CandidateSource,
    /// First and last line token (inclusive) the value was read from.
    pub token_span: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    WordPreferred,
    MaxNumeral,
    Undetected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkRecord {
    pub canonical_subject: String,
    pub final_mark: Option<u8>,
    pub max_mark: u8,
    pub resolution: Resolution,
    pub candidates: Vec<MarkCandidate>,
    pub line_index: usize,
    pub matched_via: MatchVia,
    pub match_score: f64,
}

/// Which optional stages actually ran for a document.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stages {
    pub preprocess: bool,
    pub postprocess: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarksheetResult {
    pub source_id: String,
    pub detected_state: String,
    pub records: Vec<MarkRecord>,
    pub diagnostics: Vec<Diagnostic>,
    pub stages: Stages,
}

impl MarksheetResult {
    pub fn mark_of(&self, subject: &str) -> Option<u8> {
        let key = normalize(subject);
        self.records
            .iter()
            .find(|r| r.canonical_subject == key)
            .and_then(|r| r.final_mark)
    }
}

/// A numeral that could not be a mark.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub token_index: usize,
    pub text: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Candidates {
    pub candidates: Vec<MarkCandidate>,
    pub rejections: Vec<Rejection>,
}

/// Collects numeral and number-word candidates from tokens after `after_index`.
pub fn extract_candidates(line: &TextLine, after_index: usize, lexicon: &Lexicon) -> Candidates {
    let numbers = NumberWords::new(lexicon.number_words());
    let mut out = Candidates::default();

    // (token index, word) for every word right of the subject
    let words: Vec<(usize, String)> = line
        .tokens
        .iter()
        .enumerate()
        .skip(after_index + 1)
        .flat_map(|(i, t)| {
            normalize(&t.text)
                .split(' ')
                .filter(|w| !w.is_empty())
                .map(|w| (i, w.to_string()))
                .collect::<Vec<_>>()
        })
        .collect();

    let mut run: Vec<(usize, String)> = Vec::new();
    let flush = |run: &mut Vec<(usize, String)>, out: &mut Candidates| {
        let texts: Vec<&str> = run.iter().map(|(_, w)| w.as_str()).collect();
        for (value, first, last) in numbers.parse_all(&texts) {
            out.candidates.push(MarkCandidate {
                value,
                source: CandidateSource::Word,
                token_span: (run[first].0, run[last].0),
            });
        }
        run.clear();
    };

    for (index, word) in words {
        if !word.is_empty() && word.bytes().all(|b| b.is_ascii_digit()) {
            flush(&mut run, &mut out);
            match word.parse::<u64>() {
                Ok(v) if v <= MAX_MARK as u64 => out.candidates.push(MarkCandidate {
                    value: v as u8,
                    source: CandidateSource::Numeral,
                    token_span: (index, index),
                }),
                _ => out.rejections.push(Rejection {
                    token_index: index,
                    text: word,
                    reason: format!("numeral exceeds {MAX_MARK}"),
                }),
            }
        } else if numbers.is_number_word(&word) {
            run.push((index, word));
        } else {
            flush(&mut run, &mut out);
        }
    }
    flush(&mut run, &mut out);
    out
}

/// Word candidates win (largest if several), else the largest numeral.
pub fn resolve_mark(candidates: &[MarkCandidate]) -> (Option<u8>, Resolution) {
    let best = |src| {
        candidates
            .iter()
            .filter(|c| c.source == src)
            .map(|c| c.value)
            .max()
    };
    if let Some(v) = best(CandidateSource::Word) {
        (Some(v), Resolution::WordPreferred)
    } else if let Some(v) = best(CandidateSource::Numeral) {
        (Some(v), Resolution::MaxNumeral)
    } else {
        (None, Resolution::Undetected)
    }
}

/// Builds one record per subject match and aggregates diagnostics.
pub fn extract_marksheet(
    source_id: &str,
    lines: &[TextLine],
    state: &str,
    matches: &[SubjectMatch],
    lexicon: &Lexicon,
) -> MarksheetResult {
    let mut diagnostics = Vec::new();
    let mut records = Vec::with_capacity(matches.len());
    for m in matches {
        let Some(line) = lines.get(m.line_index) else {
            continue;
        };
        if records
            .iter()
            .any(|r: &MarkRecord| r.canonical_subject == m.canonical_subject)
        {
            continue;
        }
        let found = extract_candidates(line, m.anchor_end(), lexicon);
        diagnostics.extend(found.rejections.into_iter().map(|r| Diagnostic::RejectedCandidate {
            subject: m.canonical_subject.clone(),
            line_index: m.line_index,
            token_index: r.token_index,
            text: r.text,
            reason: r.reason,
        }));
        let (final_mark, resolution) = resolve_mark(&found.candidates);
        records.push(MarkRecord {
            canonical_subject: m.canonical_subject.clone(),
            final_mark,
            max_mark: MAX_MARK,
            resolution,
            candidates: found.candidates,
            line_index: m.line_index,
            matched_via: m.via,
            match_score: m.score,
        });
    }

    let resolved: Vec<u8> = records.iter().filter_map(|r| r.final_mark).collect();
    let low = resolved.iter().filter(|&&m| m <= GRADE_CEILING).count();
    if !resolved.is_empty() && 2 * low >= resolved.len() {
        diagnostics.push(Diagnostic::GradeSheetSuspected {
            low_marks: low,
            resolved: resolved.len(),
        });
    }

    MarksheetResult {
        source_id: source_id.to_string(),
        detected_state: state.to_string(),
        records,
        diagnostics,
        stages: Stages::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ocr::OcrToken;

    fn line(words: &[&str]) -> TextLine {
        let tokens: Vec<OcrToken> = words
            .iter()
            .enumerate()
            .map(|(i, w)| OcrToken::from_rect(20.0 + 120.0 * i as f64, 100.0, 100.0, 24.0, w, 0.9))
            .collect();
        TextLine {
            source_indices: (0..tokens.len()).collect(),
            anchor_index: 0,
            anchor_y: 112.0,
            tokens,
        }
    }

    fn values(c: &Candidates, src: CandidateSource) -> Vec<u8> {
        c.candidates.iter().filter(|c| c.source == src).map(|c| c.value).collect()
    }

    #[test]
    fn fig1_english_row() {
        let lex = Lexicon::builtin();
        let l = line(&["ENGLISH", "057", "006", "063", "SIXTY", "THREE"]);
        let c = extract_candidates(&l, 0, &lex);
        assert_eq!(values(&c, CandidateSource::Numeral), [57, 6, 63]);
        assert_eq!(values(&c, CandidateSource::Word), [63]);
        let word = c.candidates.iter().find(|c| c.source == CandidateSource::Word).unwrap();
        assert_eq!(word.token_span, (4, 5));
        assert!(c.rejections.is_empty());
        assert_eq!(resolve_mark(&c.candidates), (Some(63), Resolution::WordPreferred));
    }

    #[test]
    fn large_numerals_are_rejected() {
        let lex = Lexicon::builtin();
        let l = line(&["MATHS", "2019", "100063"]);
        let c = extract_candidates(&l, 0, &lex);
        assert!(c.candidates.is_empty());
        assert_eq!(c.rejections.len(), 2);
        let huge = line(&["MATHS", "99999999999999999999999"]);
        assert_eq!(extract_candidates(&huge, 0, &lex).rejections.len(), 1);
    }

    #[test]
    fn nothing_after_anchor() {
        let lex = Lexicon::builtin();
        let l = line(&["MATHS"]);
        assert_eq!(extract_candidates(&l, 0, &lex), Candidates::default());
    }

    #[test]
    fn tokens_left_of_anchor_are_ignored() {
        let lex = Lexicon::builtin();
        let l = line(&["088", "SCIENCE", "050", "012", "062"]);
        let c = extract_candidates(&l, 1, &lex);
        assert_eq!(values(&c, CandidateSource::Numeral), [50, 12, 62]);
    }

    #[test]
    fn merged_and_split_tokens() {
        let lex = Lexicon::builtin();
        let l = line(&["SCIENCE", "62/100", "SIXTYTWO"]);
        let c = extract_candidates(&l, 0, &lex);
        assert_eq!(values(&c, CandidateSource::Numeral), [62, 100]);
        assert_eq!(values(&c, CandidateSource::Word), [62]);
    }

    #[test]
    fn resolution_rules() {
        let num = |v| MarkCandidate {
            value: v,
            source: CandidateSource::Numeral,
            token_span: (0, 0),
        };
        let word = |v| MarkCandidate {
            value: v,
            source: CandidateSource::Word,
            token_span: (0, 0),
        };
        assert_eq!(resolve_mark(&[num(36), num(4), num(40)]), (Some(40), Resolution::MaxNumeral));
        assert_eq!(resolve_mark(&[]), (None, Resolution::Undetected));
        assert_eq!(
            resolve_mark(&[num(99), word(61), word(63)]),
            (Some(63), Resolution::WordPreferred)
        );
    }

    #[test]
    fn grade_sheet_is_flagged() {
        let lex = Lexicon::builtin();
        let rows = [("ENGLISH", "3"), ("HINDI", "7"), ("MATHS", "9"), ("SCIENCE", "8"), ("SANSKRIT", "65")];
        let lines: Vec<TextLine> = rows.iter().map(|(s, m)| line(&[s, m])).collect();
        let matches: Vec<SubjectMatch> = rows
            .iter()
            .enumerate()
            .map(|(i, (s, _))| SubjectMatch {
                canonical_subject: s.to_string(),
                line_index: i,
                token_indices: vec![0],
                score: 1.0,
                via: MatchVia::Exact,
            })
            .collect();
        let r = extract_marksheet("g", &lines, "Bihar", &matches, &lex);
        assert_eq!(r.records.len(), 5);
        assert!(r
            .diagnostics
            .contains(&Diagnostic::GradeSheetSuspected { low_marks: 4, resolved: 5 }));
    }

    #[test]
    fn empty_matches_give_empty_result() {
        let lex = Lexicon::builtin();
        let r = extract_marksheet("e", &[], "Other", &[], &lex);
        assert!(r.records.is_empty());
        assert!(r.diagnostics.is_empty());
    }

    proptest::proptest! {
        #[test]
        fn resolve_picks_a_candidate_value(vals in proptest::collection::vec((0u8..=100, proptest::bool::ANY), 0..8)) {
            let cands: Vec<MarkCandidate> = vals.iter().map(|&(v, w)| MarkCandidate {
                value: v,
                source: if w { CandidateSource::Word } else { CandidateSource::Numeral },
                token_span: (0, 0),
            }).collect();
            let (mark, res) = resolve_mark(&cands);
            match mark {
                None => proptest::prop_assert!(cands.is_empty()),
                Some(m) => {
                    proptest::prop_assert!(cands.iter().any(|c| c.value == m));
                    if res == Resolution::MaxNumeral {
                        proptest::prop_assert!(cands.iter().all(|c| c.value <= m));
                    }
                }
            }
        }

        #[test]
        fn candidates_stay_in_range(words in proptest::collection::vec("[0-9]{1,5}|[A-Z]{2,9}", 0..10)) {
            let lex = Lexicon::builtin();
            let mut all = vec!["MATHS".to_string()];
            all.extend(words);
            let refs: Vec<&str> = all.iter().map(String::as_str).collect();
            let c = extract_candidates(&line(&refs), 0, &lex);
            proptest::prop_assert!(c.candidates.iter().all(|c| c.value <= 100));
        }
    }
}
