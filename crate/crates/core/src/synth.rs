//! Deterministic synthetic documents: a ruled-text page for deskew work and
//! OCR token dumps of marksheets from seven state board layouts, with
//! injected OCR-style corruptions and matching gold marks.

use crate::ocr::{OcrToken, TokenStream};
use crate::preprocess::BinaryImage;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Subject → expected final mark.
pub type GoldMarks = BTreeMap<String, u8>;

/// A 640×480 page carrying 12 rows of word-like ink blocks.
pub fn ruled_text_page(seed: u64) -> BinaryImage {
    let (w, h) = (640, 480);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut img = BinaryImage::blank(w, h).expect("non-zero size");
    for row in 0..12 {
        let top = 50 + row * 32;
        let mut x = 60 + rng.gen_range(0..20);
        while x < w - 100 {
            let word = rng.gen_range(18..70).min(w - 60 - x);
            for y in top..top + 10 {
                for xx in x..x + word {
                    img.set(xx, y, true);
                }
            }
            x += word + rng.gen_range(8..16);
        }
    }
    img
}

const UNITS: [&str; 20] = [
    "ZERO", "ONE", "TWO", "THREE", "FOUR", "FIVE", "SIX", "SEVEN", "EIGHT", "NINE", "TEN",
    "ELEVEN", "TWELVE", "THIRTEEN", "FOURTEEN", "FIFTEEN", "SIXTEEN", "SEVENTEEN", "EIGHTEEN",
    "NINETEEN",
];
const TENS: [&str; 10] = [
    "", "", "TWENTY", "THIRTY", "FORTY", "FIFTY", "SIXTY", "SEVENTY", "EIGHTY", "NINETY",
];

/// Printed English words for a mark, e.g. 63 → `["SIXTY", "THREE"]`.
pub fn mark_words(mark: u8) -> Vec<&'static str> {
    match mark {
        0..=19 => vec![UNITS[mark as usize]],
        100 => vec!["HUNDRED"],
        _ if mark.is_multiple_of(10) => vec![TENS[(mark / 10) as usize]],
        _ => vec![TENS[(mark / 10) as usize], UNITS[(mark % 10) as usize]],
    }
}

struct Template {
    state: &'static str,
    header: &'static [&'static str],
    /// (printed subject name, canonical lexicon subject)
    subjects: [(&'static str, &'static str); 5],
    words: bool,
}

const TEMPLATES: [Template; 7] = [
    Template {
        state: "Bihar",
        header: &["BIHAR SCHOOL EXAMINATION BOARD PATNA", "ANNUAL SECONDARY SCHOOL EXAMINATION 2019"],
        subjects: [
            ("MOTHER TONGUE HINDI", "HINDI"),
            ("SANSKRIT", "SANSKRIT"),
            ("MATHEMATICS", "MATHS"),
            ("SCIENCE", "SCIENCE"),
            ("SOCIAL SCIENCE", "SOCIAL SCIENCE"),
        ],
        words: true,
    },
    Template {
        state: "Delhi",
        header: &["CENTRAL BOARD OF SECONDARY EDUCATION", "SECONDARY SCHOOL EXAMINATION DELHI REGION"],
        subjects: [
            ("ENGLISH LNG & LIT.", "ENGLISH"),
            ("HINDI COURSE-A", "HINDI"),
            ("MATHEMATICS STANDARD", "MATHS"),
            ("SCIENCE", "SCIENCE"),
            ("SOCIAL SCIENCE", "SOCIAL SCIENCE"),
        ],
        words: true,
    },
    Template {
        state: "Gujarat",
        header: &[
            "GUJARAT SECONDARY AND HIGHER SECONDARY EDUCATION BOARD GANDHINAGAR",
            "SECONDARY SCHOOL CERTIFICATE EXAMINATION MARCH 2019",
        ],
        subjects: [
            ("ENGLISH", "ENGLISH"),
            ("GUJARATI", "LANGUAGE"),
            ("SOCIAL SCIENCE", "SOCIAL SCIENCE"),
            ("SCIENCE", "SCIENCE"),
            ("MATHEMATICS", "MATHS"),
        ],
        words: true,
    },
    Template {
        state: "Haryana",
        header: &["BOARD OF SCHOOL EDUCATION HARYANA BHIWANI", "SECONDARY EXAMINATION MARCH 2019"],
        subjects: [
            ("HINDI", "HINDI"),
            ("ENGLISH", "ENGLISH"),
            ("MATHEMATICS", "MATHS"),
            ("SCIENCE", "SCIENCE"),
            ("SOCIAL SCIENCE", "SOCIAL SCIENCE"),
        ],
        words: false,
    },
    Template {
        state: "Jharkhand",
        header: &["JHARKHAND ACADEMIC COUNCIL RANCHI", "ANNUAL SECONDARY EXAMINATION 2019"],
        subjects: [
            ("HINDI A", "HINDI"),
            ("ENGLISH", "ENGLISH"),
            ("MATHEMATICS", "MATHS"),
            ("SCIENCE", "SCIENCE"),
            ("SOCIAL SCIENCE", "SOCIAL SCIENCE"),
        ],
        words: true,
    },
    Template {
        state: "Uttarakhand",
        header: &["UTTARAKHAND BOARD OF SCHOOL EDUCATION RAMNAGAR", "HIGH SCHOOL EXAMINATION 2019"],
        subjects: [
            ("HINDI", "HINDI"),
            ("ENGLISH", "ENGLISH"),
            ("MATHEMATICS", "MATHS"),
            ("SCIENCE", "SCIENCE"),
            ("SOCIAL SCIENCE", "SOCIAL SCIENCE"),
        ],
        words: false,
    },
    Template {
        state: "Uttar Pradesh",
        header: &["UTTAR PRADESH MADHYAMIK SHIKSHA PARISHAD", "HIGH SCHOOL EXAMINATION 2019"],
        subjects: [
            ("HINDI", "HINDI"),
            ("ENGLISH", "ENGLISH"),
            ("MATHEMATICS", "MATHS"),
            ("SCIENCE", "SCIENCE"),
            ("SOCIAL SCIENCE", "SOCIAL SCIENCE"),
        ],
        words: true,
    },
];

/// OCR-style damage applied to the row of one canonical subject.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// One look-alike character substitution in the last word of the name
    /// (or its longest word when the last is shorter than five characters).
    Typo(&'static str),
    /// Two-word subject name read as one token.
    MergedName(&'static str),
    /// Number words read as one token, e.g. `SIXTYTHREE`.
    MergedWords(&'static str),
    /// Roll number or year (> 100) printed right after the subject.
    Distractor(&'static str),
    /// Two edits on the name; beyond the reach of spell correction.
    Garbled(&'static str),
}

impl Corruption {
    fn subject(&self) -> &'static str {
        match *self {
            Corruption::Typo(s)
            | Corruption::MergedName(s)
            | Corruption::MergedWords(s)
            | Corruption::Distractor(s)
            | Corruption::Garbled(s) => s,
        }
    }

    /// Whether lexicon post-processing undoes the damage that exact matching
    /// cannot.
    pub fn needs_postprocess(&self) -> bool {
        matches!(self, Corruption::Typo(_) | Corruption::MergedName(_))
    }
}

fn lookalike(c: char) -> char {
    match c {
        'I' => '1',
        'E' => 'F',
        'O' => '0',
        'S' => '5',
        'A' => '4',
        'C' => 'G',
        'T' => '7',
        'M' => 'N',
        'N' => 'M',
        'H' => 'N',
        'G' => 'C',
        'L' => 'I',
        other => other,
    }
}

fn typo_word(words: &mut [String]) {
    let last = words.len() - 1;
    let target = if words[last].chars().count() >= 5 {
        last
    } else {
        (0..words.len())
            .max_by_key(|&i| (words[i].chars().count(), std::cmp::Reverse(i)))
            .expect("non-empty")
    };
    let mut chars: Vec<char> = words[target].chars().collect();
    let mid = chars.len() / 2;
    let pos = (mid..chars.len())
        .chain(0..mid)
        .find(|&i| lookalike(chars[i]) != chars[i])
        .unwrap_or(mid);
    chars[pos] = match lookalike(chars[pos]) {
        c if c == chars[pos] => 'X',
        c => c,
    };
    words[target] = chars.into_iter().collect();
}

fn garble_word(words: &mut [String]) {
    let last = words.len() - 1;
    let mut chars: Vec<char> = words[last].chars().collect();
    // swap two inner characters: two edits for distinct letters
    let i = 1.min(chars.len() - 1);
    let j = 2.min(chars.len() - 1);
    chars.swap(i, j);
    if chars.len() > 4 {
        let k = chars.len() - 2;
        chars[k] = 'X';
    }
    words[last] = chars.into_iter().collect();
}

/// One synthetic marksheet: token dump plus gold marks.
#[derive(Debug, Clone)]
pub struct SyntheticDocument {
    pub stream: TokenStream,
    pub gold: GoldMarks,
    pub corruptions: Vec<Corruption>,
}

struct PageBuilder {
    rng: ChaCha8Rng,
    tokens: Vec<OcrToken>,
    line: usize,
    jitter: bool,
}

impl PageBuilder {
    fn new(seed: u64, jitter: bool) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            tokens: Vec::new(),
            line: 0,
            jitter,
        }
    }

    fn push_line<S: AsRef<str>>(&mut self, words: &[S]) {
        let base_y = 60.0 + 70.0 * self.line as f64;
        let mut x = 40.0;
        for w in words {
            let w = w.as_ref();
            let width = 16.0 * w.chars().count() as f64 + 10.0;
            let (dx, dy, conf) = if self.jitter {
                (
                    self.rng.gen_range(-3..=3) as f64,
                    self.rng.gen_range(-6..=6) as f64,
                    self.rng.gen_range(850..=990) as f64 / 1000.0,
                )
            } else {
                (0.0, 0.0, 0.95)
            };
            self.tokens.push(OcrToken::from_rect(
                (x + dx).max(0.0),
                base_y + dy,
                width,
                28.0,
                w,
                conf,
            ));
            x += width + 30.0;
        }
        self.line += 1;
    }

    fn finish(mut self, source_id: &str, shuffle: bool) -> TokenStream {
        if shuffle {
            self.tokens.shuffle(&mut self.rng);
        }
        TokenStream {
            source_id: source_id.to_string(),
            page: 1,
            tokens: self.tokens,
        }
    }
}

fn split_words(s: &str) -> Vec<String> {
    s.split(' ').map(String::from).collect()
}

struct Row {
    printed: &'static str,
    canonical: &'static str,
    theory: u8,
    practical: u8,
}

fn render(
    source_id: &str,
    template: &Template,
    names: &[&str],
    rows: &[Row],
    corruptions: &[Corruption],
    seed: u64,
    jitter: bool,
) -> SyntheticDocument {
    let mut page = PageBuilder::new(seed, jitter);
    for line in template.header {
        page.push_line(&split_words(line));
    }
    page.push_line(&["SEAT", "NO.", "B12431"]);
    let mut name_line = vec!["NAME", "OF", "CANDIDATE"];
    name_line.extend_from_slice(names);
    page.push_line(&name_line);
    let mut head = vec!["SUBJECT", "THEORY", "PRACTICAL", "TOTAL"];
    if template.words {
        head.extend(["IN", "WORDS"]);
    }
    page.push_line(&head);

    let mut gold = GoldMarks::new();
    let mut grand = 0u32;
    for row in rows {
        let total = row.theory + row.practical;
        gold.insert(row.canonical.to_string(), total);
        grand += total as u32;
        let mut name = split_words(row.printed);
        let mut words: Vec<String> = mark_words(total).into_iter().map(String::from).collect();
        let mut distractor = None;
        for c in corruptions.iter().filter(|c| c.subject() == row.canonical) {
            match c {
                Corruption::Typo(_) => typo_word(&mut name),
                Corruption::Garbled(_) => garble_word(&mut name),
                Corruption::MergedName(_) => name = vec![name.concat()],
                Corruption::MergedWords(_) => words = vec![words.concat()],
                Corruption::Distractor(_) => distractor = Some(format!("{}", 1_000_000 + seed % 900_000)),
            }
        }
        let mut line = name;
        line.extend(distractor);
        line.push(format!("{:03}", row.theory));
        line.push(format!("{:03}", row.practical));
        line.push(format!("{:03}", total));
        if template.words {
            line.extend(words);
        }
        page.push_line(&line);
    }
    page.push_line(&["GRAND".to_string(), "TOTAL".to_string(), grand.to_string()]);
    page.push_line(&["RESULT", "PASS"]);
    SyntheticDocument {
        stream: page.finish(source_id, jitter),
        gold,
        corruptions: corruptions.to_vec(),
    }
}

fn gujarat_rows() -> Vec<Row> {
    let t = &TEMPLATES[2];
    // theory / practical splits of the sample certificate's marks
    let marks = [(57, 6), (70, 7), (55, 8), (50, 12), (32, 8)];
    t.subjects
        .iter()
        .zip(marks)
        .map(|(&(printed, canonical), (theory, practical))| Row {
            printed,
            canonical,
            theory,
            practical,
        })
        .collect()
}

/// The Gujarat sample certificate: English 63, Language 77, Social Science
/// 63, Science 62, Maths 40.
pub fn gujarat_marksheet() -> SyntheticDocument {
    let t = &TEMPLATES[2];
    render("gj-12431", t, &["PATEL", "RAHUL", "K"], &gujarat_rows(), &[], 12431, false)
}

/// The Gujarat sample with "SOCIAL SCIENCE" read as `SOCIALSCIENCE`.
pub fn gujarat_marksheet_merged() -> SyntheticDocument {
    let t = &TEMPLATES[2];
    render(
        "gj-12431-merged",
        t,
        &["PATEL", "RAHUL", "K"],
        &gujarat_rows(),
        &[Corruption::MergedName("SOCIAL SCIENCE")],
        12431,
        false,
    )
}

/// Planned damage per document of the 20-document corpus; document `i` uses
/// template `i % 7`.
fn corpus_plan() -> [&'static [Corruption]; 20] {
    use Corruption::*;
    [
        &[],
        &[Typo("SCIENCE")],
        &[MergedName("SOCIAL SCIENCE"), Typo("ENGLISH")],
        &[Distractor("HINDI"), Distractor("MATHS")],
        &[MergedWords("ENGLISH"), MergedWords("SCIENCE")],
        &[Typo("MATHS"), Typo("SCIENCE")],
        &[MergedName("SOCIAL SCIENCE")],
        &[Typo("HINDI"), MergedName("SOCIAL SCIENCE")],
        &[],
        &[Distractor("ENGLISH"), Typo("SCIENCE")],
        &[Garbled("HINDI")],
        &[MergedName("SOCIAL SCIENCE"), Typo("ENGLISH"), Typo("SCIENCE")],
        &[],
        &[Garbled("HINDI"), Typo("ENGLISH")],
        &[Distractor("SANSKRIT")],
        &[MergedName("SOCIAL SCIENCE"), MergedWords("MATHS")],
        &[],
        &[Typo("SCIENCE"), Typo("ENGLISH"), MergedName("SOCIAL SCIENCE")],
        &[Typo("MATHS")],
        &[Garbled("HINDI"), Garbled("ENGLISH")],
    ]
}

const NAMES: [&str; 10] = [
    "ANITA", "RAVI", "SUNITA", "MOHAN", "PRIYA", "ARJUN", "KAVITA", "SURESH", "NEHA", "VIKRAM",
];

/// The bundled evaluation corpus, in `source_id` order.
pub fn synthetic_corpus(seed: u64) -> Vec<SyntheticDocument> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    corpus_plan()
        .iter()
        .enumerate()
        .map(|(i, plan)| {
            let template = &TEMPLATES[i % TEMPLATES.len()];
            let rows: Vec<Row> = template
                .subjects
                .iter()
                .map(|&(printed, canonical)| {
                    let theory = rng.gen_range(25..=80);
                    let practical = rng.gen_range(5..=20);
                    Row {
                        printed,
                        canonical,
                        theory,
                        practical,
                    }
                })
                .collect();
            let names = [NAMES[i % NAMES.len()], NAMES[(i * 3 + 1) % NAMES.len()]];
            let id = format!(
                "syn-{:02}-{}",
                i,
                template.state.to_lowercase().replace(' ', "-")
            );
            render(&id, template, &names, &rows, plan, seed ^ (i as u64 * 7919), true)
        })
        .collect()
}

/// Gold file content for a set of documents: `{source_id: {subject: mark}}`.
pub fn gold_map(docs: &[SyntheticDocument]) -> BTreeMap<String, GoldMarks> {
    docs.iter()
        .map(|d| (d.stream.source_id.clone(), d.gold.clone()))
        .collect()
}

/// Seed of the corpus committed under `fixtures/corpus`.
pub const CORPUS_SEED: u64 = 2023;
