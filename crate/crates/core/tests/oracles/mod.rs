//! Reference implementations written independently of the library, used to
//! cross-check it. Shared with the acceptance suite through `#[path]`.

#![allow(dead_code)]

use marksheet_core::layout::{token_center, TextLine};
use marksheet_core::ocr::{OcrToken, TokenStream};
use rand::Rng;
use std::collections::BTreeMap;

/// Textbook full-matrix Levenshtein distance.
pub fn levenshtein_dp(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = if a[i - 1] == b[j - 1] { 0 } else { 1 };
            d[i][j] = (d[i - 1][j] + 1).min(d[i][j - 1] + 1).min(d[i - 1][j - 1] + cost);
        }
    }
    d[a.len()][b.len()]
}

pub fn similarity_dp(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        1.0
    } else {
        1.0 - levenshtein_dp(a, b) as f64 / longest as f64
    }
}

/// Tries every threshold on the raw pixel list and classifies with the best
/// one (ink iff value < t). Between-class variance is compared as the exact
/// fraction `(S0·n1 − S1·n0)² / (n0·n1)`; the first maximum wins.
pub fn otsu_brute_force(pixels: &[u8]) -> Vec<bool> {
    let mut best: Option<(i128, i128, u16)> = None;
    for t in 0u16..=256 {
        let (mut n0, mut s0, mut n1, mut s1) = (0i128, 0i128, 0i128, 0i128);
        for &p in pixels {
            if (p as u16) < t {
                n0 += 1;
                s0 += p as i128;
            } else {
                n1 += 1;
                s1 += p as i128;
            }
        }
        if n0 == 0 || n1 == 0 {
            continue;
        }
        let diff = s0 * n1 - s1 * n0;
        let (num, den) = (diff * diff, n0 * n1);
        let better = match best {
            None => num > 0,
            Some((bn, bd, _)) => num * bd > bn * den,
        };
        if better {
            best = Some((num, den, t));
        }
    }
    let t = best.map_or(0, |(_, _, t)| t);
    pixels.iter().map(|&p| (p as u16) < t).collect()
}

/// Majority vote with clamp-to-edge borders, pixel by pixel.
pub fn median_filter(pixels: &[bool], w: usize, h: usize, window: usize) -> Vec<bool> {
    let r = (window / 2) as i64;
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let mut ink = 0;
            for dy in -r..=r {
                for dx in -r..=r {
                    let sx = (x + dx).clamp(0, w as i64 - 1) as usize;
                    let sy = (y + dy).clamp(0, h as i64 - 1) as usize;
                    ink += pixels[sy * w + sx] as usize;
                }
            }
            out.push(2 * ink > window * window);
        }
    }
    out
}

const ONES: [&str; 10] = ["", "ONE", "TWO", "THREE", "FOUR", "FIVE", "SIX", "SEVEN", "EIGHT", "NINE"];
const TEENS: [&str; 10] = [
    "TEN", "ELEVEN", "TWELVE", "THIRTEEN", "FOURTEEN", "FIFTEEN", "SIXTEEN", "SEVENTEEN",
    "EIGHTEEN", "NINETEEN",
];
const DECADES: [&str; 10] = ["", "", "TWENTY", "THIRTY", "FORTY", "FIFTY", "SIXTY", "SEVENTY", "EIGHTY", "NINETY"];

/// Every accepted spelling for each value 0–100, as token lists: spaced,
/// hyphenated and run-together forms of compound numbers.
pub fn number_word_table() -> BTreeMap<u8, Vec<Vec<String>>> {
    let mut table = BTreeMap::new();
    for n in 0u8..=100 {
        let spaced: Vec<&str> = match n {
            0 => vec!["ZERO"],
            1..=9 => vec![ONES[n as usize]],
            10..=19 => vec![TEENS[(n - 10) as usize]],
            100 => vec!["ONE", "HUNDRED"],
            _ if n % 10 == 0 => vec![DECADES[(n / 10) as usize]],
            _ => vec![DECADES[(n / 10) as usize], ONES[(n % 10) as usize]],
        };
        let mut forms = vec![spaced.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
        if spaced.len() == 2 {
            forms.push(vec![spaced.join("-")]);
            forms.push(vec![spaced.concat()]);
        }
        if n == 100 {
            forms.push(vec!["HUNDRED".to_string()]);
        }
        table.insert(n, forms);
    }
    table
}

/// Single words over a vowel-free alphabet can never contain a number word.
pub fn random_non_number<R: Rng>(rng: &mut R) -> String {
    const LETTERS: &[u8] = b"BCDFGHJKLMNPQRSTVWXZ";
    let len = rng.gen_range(2..=10);
    (0..len)
        .map(|_| LETTERS[rng.gen_range(0..LETTERS.len())] as char)
        .collect()
}

/// A random cloud of axis-aligned tokens with integer coordinates.
pub fn random_token_cloud<R: Rng>(rng: &mut R) -> TokenStream {
    let n = rng.gen_range(0..40);
    let spread = rng.gen_range(50..800);
    let tokens = (0..n)
        .map(|i| {
            let x = rng.gen_range(0..1000) as f64;
            let y = rng.gen_range(0..spread) as f64;
            let w = rng.gen_range(4..160) as f64;
            let h = 2.0 * rng.gen_range(4..20) as f64;
            // coarse confidences make ties between anchors common
            let conf = rng.gen_range(0..=10) as f64 / 10.0;
            OcrToken::from_rect(x, y, w, h, &format!("T{i}"), conf)
        })
        .collect();
    TokenStream {
        source_id: "cloud".into(),
        page: 1,
        tokens,
    }
}

pub fn translate(stream: &TokenStream, dx: f64, dy: f64) -> TokenStream {
    let mut out = stream.clone();
    for t in &mut out.tokens {
        for p in &mut t.polygon {
            p.x += dx;
            p.y += dy;
        }
    }
    out
}

/// Partition, margin membership and left-to-right order of a grouping.
pub fn check_line_invariants(stream: &TokenStream, lines: &[TextLine], margin: f64) -> Result<(), String> {
    let mut seen = vec![0usize; stream.tokens.len()];
    for (li, line) in lines.iter().enumerate() {
        if line.tokens.len() != line.source_indices.len() || line.tokens.is_empty() {
            return Err(format!("line {li}: token/index mismatch or empty"));
        }
        let mut last_x = f64::NEG_INFINITY;
        for (t, &i) in line.tokens.iter().zip(&line.source_indices) {
            seen[i] += 1;
            if *t != stream.tokens[i] {
                return Err(format!("line {li}: token {i} altered"));
            }
            let (cx, cy) = token_center(t);
            if (cy - line.anchor_y).abs() > margin {
                return Err(format!("line {li}: token {i} is {:.1} px from anchor", (cy - line.anchor_y).abs()));
            }
            if cx < last_x {
                return Err(format!("line {li}: tokens out of x order"));
            }
            last_x = cx;
        }
    }
    if let Some(i) = seen.iter().position(|&c| c != 1) {
        return Err(format!("token {i} appears {} times", seen[i]));
    }
    if lines.windows(2).any(|w| w[0].anchor_y > w[1].anchor_y) {
        return Err("lines not ordered by anchor".into());
    }
    Ok(())
}
