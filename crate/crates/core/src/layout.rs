//! Reading-order line reconstruction from unordered OCR tokens.
//!
//! Tokens are visited by descending confidence; each unassigned token opens a
//! line and pulls in every unassigned token whose centre lies within
//! `y_margin` pixels of it vertically. Lines are then ordered top to bottom
//! and their tokens left to right.

use crate::lexicon::normalize;
use crate::ocr::{OcrToken, TokenStream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutConfig {
    pub y_margin: f64,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        Self { y_margin: 35.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TextLine {
    /// Tokens in ascending centre-x order.
    pub tokens: Vec<OcrToken>,
    /// Position of each token in the source stream, parallel to `tokens`.
    pub source_indices: Vec<usize>,
    pub anchor_y: f64,
    /// Stream index of the token that opened the line.
    pub anchor_index: usize,
}

impl TextLine {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Mean of the four polygon corners.
pub fn token_center(token: &OcrToken) -> (f64, f64) {
    let (sx, sy) = token
        .polygon
        .iter()
        .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
    (sx / 4.0, sy / 4.0)
}

pub fn group_lines(stream: &TokenStream, config: &LayoutConfig) -> Vec<TextLine> {
    let centers: Vec<(f64, f64)> = stream.tokens.iter().map(token_center).collect();
    let mut order: Vec<usize> = (0..stream.tokens.len()).collect();
    order.sort_by(|&a, &b| {
        stream.tokens[b]
            .confidence
            .total_cmp(&stream.tokens[a].confidence)
            .then(a.cmp(&b))
    });

    let mut assigned = vec![false; stream.tokens.len()];
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for &anchor in &order {
        if assigned[anchor] {
            continue;
        }
        let anchor_y = centers[anchor].1;
        let members: Vec<usize> = (0..stream.tokens.len())
            .filter(|&i| !assigned[i] && (centers[i].1 - anchor_y).abs() <= config.y_margin)
            .collect();
        for &i in &members {
            assigned[i] = true;
        }
        groups.push((anchor, members));
    }

    let mut lines: Vec<TextLine> = groups
        .into_iter()
        .map(|(anchor, mut members)| {
            members.sort_by(|&a, &b| centers[a].0.total_cmp(&centers[b].0).then(a.cmp(&b)));
            TextLine {
                tokens: members.iter().map(|&i| stream.tokens[i].clone()).collect(),
                source_indices: members,
                anchor_y: centers[anchor].1,
                anchor_index: anchor,
            }
        })
        .collect();
    // stable: equal anchors keep creation order
    lines.sort_by(|a, b| a.anchor_y.total_cmp(&b.anchor_y));
    lines
}

/// Normalized token texts joined by single spaces.
pub fn line_text(line: &TextLine) -> String {
    line.tokens
        .iter()
        .map(|t| normalize(&t.text))
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}
