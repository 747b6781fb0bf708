//! Scoring results against gold marks, bucketed by how many subjects per
//! certificate came out right.

use crate::marks::MarksheetResult;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// `{source_id: {subject: mark}}`
pub type Gold = BTreeMap<String, BTreeMap<String, u8>>;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no gold entry for: {}", .0.join(", "))]
    MissingGold(Vec<String>),
    #[error("invalid gold file: {0}")]
    InvalidGold(#[from] serde_json::Error),
}

pub fn load_gold(bytes: &[u8]) -> Result<Gold, EvalError> {
    Ok(serde_json::from_slice(bytes)?)
}

/// A percentage held as integer hundredths, so 72.22% is `Percent(7222)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Percent(pub u32);

impl Percent {
    /// `count / total` as a percentage, rounded half-up to 2 decimals.
    pub fn ratio(count: usize, total: usize) -> Self {
        if total == 0 {
            return Percent(0);
        }
        let (c, t) = (count as u64, total as u64);
        Percent(((20_000 * c + t) / (2 * t)) as u32)
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}%", self.0 / 100, self.0 % 100)
    }
}

impl Serialize for Percent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DocumentScore {
    pub source_id: String,
    pub correct_count: usize,
    pub expected_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Buckets {
    pub five: Percent,
    pub four: Percent,
    pub four_or_five: Percent,
    pub zero_to_three: Percent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub struct BucketCounts {
    pub five: usize,
    pub four: usize,
    pub zero_to_three: usize,
}

impl Buckets {
    /// The 5- and 4-buckets are rounded individually; the combined bucket is
    /// their sum and the 0-3 bucket its complement, so the printed rows add
    /// up exactly.
    pub fn from_counts(counts: BucketCounts) -> Self {
        let total = counts.five + counts.four + counts.zero_to_three;
        let five = Percent::ratio(counts.five, total);
        let four = Percent::ratio(counts.four, total);
        let four_or_five = Percent(five.0 + four.0);
        let zero_to_three = if total == 0 {
            Percent(0)
        } else {
            Percent(10_000 - four_or_five.0)
        };
        Buckets {
            five,
            four,
            four_or_five,
            zero_to_three,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalReport {
    pub documents: usize,
    pub per_document: Vec<DocumentScore>,
    pub counts: BucketCounts,
    pub buckets: Buckets,
}

impl EvalReport {
    /// Builds a report straight from per-document scores.
    pub fn from_scores(mut per_document: Vec<DocumentScore>) -> Self {
        per_document.sort_by(|a, b| a.source_id.cmp(&b.source_id));
        let mut counts = BucketCounts::default();
        for d in &per_document {
            match d.correct_count {
                5.. => counts.five += 1,
                4 => counts.four += 1,
                _ => counts.zero_to_three += 1,
            }
        }
        EvalReport {
            documents: per_document.len(),
            per_document,
            counts,
            buckets: Buckets::from_counts(counts),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A gold subject counts as correct when a record carries that subject and
/// exactly the gold mark.
pub fn evaluate_corpus(results: &[MarksheetResult], gold: &Gold) -> Result<EvalReport, EvalError> {
    let missing: Vec<String> = results
        .iter()
        .filter(|r| !gold.contains_key(&r.source_id))
        .map(|r| r.source_id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(EvalError::MissingGold(missing));
    }
    let scores = results
        .iter()
        .map(|r| {
            let expected = &gold[&r.source_id];
            let correct = expected
                .iter()
                .filter(|(subject, &mark)| r.mark_of(subject) == Some(mark))
                .count();
            DocumentScore {
                source_id: r.source_id.clone(),
                correct_count: correct,
                expected_count: expected.len(),
            }
        })
        .collect();
    Ok(EvalReport::from_scores(scores))
}

/// Aligned text table with one column per labelled report.
pub fn render_table(columns: &[(&str, &EvalReport)]) -> String {
    type Row = (&'static str, fn(&Buckets) -> Percent);
    let rows: [Row; 4] = [
        ("5 marks", |b| b.five),
        ("4 marks", |b| b.four),
        ("4-5 marks", |b| b.four_or_five),
        ("0-3 marks", |b| b.zero_to_three),
    ];
    let head = "Correctly detected";
    let first = rows.iter().map(|r| r.0.len()).chain([head.len()]).max().unwrap_or(0);
    let widths: Vec<usize> = columns.iter().map(|(l, _)| l.len().max(7)).collect();

    let mut out = format!("{head:<first$}");
    for ((label, _), w) in columns.iter().zip(&widths) {
        out.push_str(&format!("  {label:>w$}"));
    }
    out.push('\n');
    for (name, pick) in rows {
        out.push_str(&format!("{name:<first$}"));
        for ((_, report), w) in columns.iter().zip(&widths) {
            let cell = pick(&report.buckets).to_string();
            out.push_str(&format!("  {cell:>w$}"));
        }
        out.push('\n');
    }
    out
}
