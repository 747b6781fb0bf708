//! English cardinals from ZERO to ONE HUNDRED.

use crate::lexicon::{segment_merged, MatchConfig};
use std::collections::BTreeMap;

/// Number-word vocabulary mapping each word to its value.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberWords<'a> {
    words: &'a BTreeMap<String, u8>,
    vocabulary: Vec<&'a str>,
}

/// One vocabulary word, remembering which input word it came from.
#[derive(Debug, Clone, Copy)]
struct Atom {
    value: u8,
    source: usize,
}

impl<'a> NumberWords<'a> {
    pub fn new(words: &'a BTreeMap<String, u8>) -> Self {
        Self {
            words,
            vocabulary: words.keys().map(String::as_str).collect(),
        }
    }

    /// Expands one normalized word into number atoms: hyphens separate parts
    /// and a part missing its spaces is split over the vocabulary exactly.
    fn atoms(&self, word: &str) -> Option<Vec<u8>> {
        let exact = MatchConfig {
            subject_threshold: 1.0,
            ..MatchConfig::default()
        };
        let mut out = Vec::new();
        for part in word.split('-').filter(|p| !p.is_empty()) {
            if let Some(&v) = self.words.get(part) {
                out.push(v);
                continue;
            }
            let pieces = segment_merged(part, &self.vocabulary, &exact);
            if pieces.len() < 2 {
                return None;
            }
            for p in pieces {
                out.push(*self.words.get(&p)?);
            }
        }
        (!out.is_empty()).then_some(out)
    }

    pub fn is_number_word(&self, word: &str) -> bool {
        self.atoms(word).is_some()
    }

    /// Parses every cardinal in a run of number words, left to right.
    /// Each value comes with the input word range `[first, last]` it used.
    pub fn parse_all<S: AsRef<str>>(&self, words: &[S]) -> Vec<(u8, usize, usize)> {
        let mut atoms = Vec::new();
        for (source, w) in words.iter().enumerate() {
            match self.atoms(w.as_ref()) {
                Some(vals) => atoms.extend(vals.into_iter().map(|value| Atom { value, source })),
                None => break,
            }
        }
        let mut out = Vec::new();
        let mut rest = atoms.as_slice();
        while let Some((value, used)) = parse_prefix(rest) {
            out.push((value, rest[0].source, rest[used - 1].source));
            rest = &rest[used..];
        }
        out
    }

    /// Value of the longest cardinal at the start of `words`.
    pub fn parse<S: AsRef<str>>(&self, words: &[S]) -> Option<u8> {
        self.parse_all(words).first().map(|&(v, _, _)| v)
    }
}

/// Longest grammatical prefix: `HUNDRED`, `ONE HUNDRED`, tens + unit, tens,
/// teens or a unit. Returns the value and the number of atoms consumed.
fn parse_prefix(atoms: &[Atom]) -> Option<(u8, usize)> {
    let first = atoms.first()?.value;
    let next = atoms.get(1).map(|a| a.value);
    match first {
        100 => Some((100, 1)),
        1 if next == Some(100) => Some((100, 2)),
        20..=90 if first % 10 == 0 => match next {
            Some(u @ 1..=9) => Some((first + u, 2)),
            _ => Some((first, 1)),
        },
        0..=19 => Some((first, 1)),
        _ => None,
    }
}

/// Parses a cardinal 0–100 from normalized words with the given vocabulary.
pub fn parse_number_word<S: AsRef<str>>(words: &[S], vocabulary: &BTreeMap<String, u8>) -> Option<u8> {
    NumberWords::new(vocabulary).parse(words)
}
