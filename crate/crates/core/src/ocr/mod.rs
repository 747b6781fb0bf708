//! Engine-agnostic OCR token interchange.
//!
//! A token dump is one UTF-8 JSON document per page:
//!
//! ```json
//! {"source_id": "gj-12431", "page": 1,
//!  "tokens": [{"polygon": [[10,20],[90,20],[90,44],[10,44]], "text": "ENGLISH", "confidence": 0.98}]}
//! ```
//!
//! Polygons hold four points clockwise from the top-left, in pixels of the
//! image the engine saw, origin top-left, y growing downward.

mod engine;

pub use engine::{run_external_engine, EngineConfig};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OcrError {
    #[error("token dump: {0}")]
    Dump(#[from] DumpParseError),

    #[error("engine failed ({status}): {stderr}")]
    EngineFailure { status: String, stderr: String },

    #[error("engine timed out after {0:?}")]
    EngineTimeout(std::time::Duration),

    #[error("invalid engine command: {0}")]
    InvalidCommand(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DumpParseError {
    #[error("malformed document: {0}")]
    Document(String),

    #[error("token {index}: {reason}")]
    Record { index: usize, reason: String },
}

impl DumpParseError {
    pub fn record_index(&self) -> Option<usize> {
        match self {
            DumpParseError::Record { index, .. } => Some(*index),
            DumpParseError::Document(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// One recognized fragment with its quadrilateral and confidence.
#[derive(Debug, Clone, PartialEq)]
pub struct OcrToken {
    pub polygon: [Point; 4],
    pub text: String,
    pub confidence: f64,
}

impl OcrToken {
    /// Validating constructor used by the loader.
    pub fn new(polygon: [Point; 4], text: impl Into<String>, confidence: f64) -> Result<Self, String> {
        let text = text.into();
        if polygon
            .iter()
            .any(|p| !(p.x.is_finite() && p.y.is_finite()) || p.x < 0.0 || p.y < 0.0)
        {
            return Err("polygon coordinates must be finite and non-negative".into());
        }
        if text.trim().is_empty() {
            return Err("text is empty".into());
        }
        if !(0.0..=1.0).contains(&confidence) {
            return Err(format!("confidence {confidence} outside [0,1]"));
        }
        Ok(Self {
            polygon,
            text,
            confidence,
        })
    }

    /// Axis-aligned box helper: `(x, y)` is the top-left corner.
    pub fn from_rect(x: f64, y: f64, w: f64, h: f64, text: &str, confidence: f64) -> Self {
        let polygon = [
            Point::new(x, y),
            Point::new(x + w, y),
            Point::new(x + w, y + h),
            Point::new(x, y + h),
        ];
        Self::new(polygon, text, confidence).expect("rectangle token must be valid")
    }
}

/// Tokens of one page in engine emission order.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenStream {
    pub source_id: String,
    pub page: u32,
    pub tokens: Vec<OcrToken>,
}

#[derive(Serialize, Deserialize)]
struct WireDocument {
    source_id: String,
    #[serde(default = "first_page")]
    page: u32,
    tokens: Vec<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct WireToken {
    polygon: Vec<[f64; 2]>,
    text: String,
    confidence: f64,
}

fn first_page() -> u32 {
    1
}

/// Parses a token dump, keeping token order exactly as written.
pub fn load_token_dump(bytes: &[u8]) -> Result<TokenStream, DumpParseError> {
    let doc: WireDocument =
        serde_json::from_slice(bytes).map_err(|e| DumpParseError::Document(e.to_string()))?;
    if doc.page == 0 {
        return Err(DumpParseError::Document("page must be >= 1".into()));
    }
    let tokens = doc
        .tokens
        .into_iter()
        .enumerate()
        .map(|(index, raw)| {
            let record = |reason: String| DumpParseError::Record { index, reason };
            let wire: WireToken = serde_json::from_value(raw).map_err(|e| record(e.to_string()))?;
            let points: [[f64; 2]; 4] = wire.polygon.as_slice().try_into().map_err(|_| {
                record(format!("polygon has {} points, expected 4", wire.polygon.len()))
            })?;
            let polygon = points.map(|[x, y]| Point::new(x, y));
            OcrToken::new(polygon, wire.text, wire.confidence).map_err(record)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TokenStream {
        source_id: doc.source_id,
        page: doc.page,
        tokens,
    })
}

/// Serializes a stream in the interchange format, one token per line.
pub fn to_token_dump(stream: &TokenStream) -> Vec<u8> {
    let mut out = format!(
        "{{\n  \"source_id\": {},\n  \"page\": {},\n  \"tokens\": [",
        serde_json::to_string(&stream.source_id).expect("string serializes"),
        stream.page
    );
    for (i, t) in stream.tokens.iter().enumerate() {
        let wire = WireToken {
            polygon: t.polygon.iter().map(|p| [p.x, p.y]).collect(),
            text: t.text.clone(),
            confidence: t.confidence,
        };
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&serde_json::to_string(&wire).expect("token serializes"));
    }
    out.push_str(if stream.tokens.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_token_list() {
        let s = load_token_dump(br#"{"source_id":"x","page":1,"tokens":[]}"#).unwrap();
        assert!(s.tokens.is_empty());
        assert_eq!(s.source_id, "x");
    }

    #[test]
    fn three_point_polygon_reports_index() {
        let dump = br#"{"source_id":"x","page":1,"tokens":[
            {"polygon":[[0,0],[1,0],[1,1],[0,1]],"text":"OK","confidence":0.9},
            {"polygon":[[0,0],[1,0],[1,1]],"text":"BAD","confidence":0.9}]}"#;
        let err = load_token_dump(dump).unwrap_err();
        assert_eq!(err.record_index(), Some(1));
    }

    #[test]
    fn confidence_and_text_are_validated() {
        let bad_conf = br#"{"source_id":"x","tokens":[{"polygon":[[0,0],[1,0],[1,1],[0,1]],"text":"A","confidence":1.5}]}"#;
        assert_eq!(load_token_dump(bad_conf).unwrap_err().record_index(), Some(0));
        let blank = br#"{"source_id":"x","tokens":[{"polygon":[[0,0],[1,0],[1,1],[0,1]],"text":"   ","confidence":0.5}]}"#;
        assert_eq!(load_token_dump(blank).unwrap_err().record_index(), Some(0));
        let negative = br#"{"source_id":"x","tokens":[{"polygon":[[0,-1],[1,0],[1,1],[0,1]],"text":"A","confidence":0.5}]}"#;
        assert_eq!(load_token_dump(negative).unwrap_err().record_index(), Some(0));
        let missing = br#"{"source_id":"x","tokens":[{"polygon":[[0,0],[1,0],[1,1],[0,1]],"confidence":0.5}]}"#;
        assert_eq!(load_token_dump(missing).unwrap_err().record_index(), Some(0));
    }

    #[test]
    fn malformed_document() {
        assert!(matches!(
            load_token_dump(b"not json"),
            Err(DumpParseError::Document(_))
        ));
        assert!(matches!(
            load_token_dump(br#"{"source_id":"x","page":0,"tokens":[]}"#),
            Err(DumpParseError::Document(_))
        ));
    }

    #[test]
    fn bundled_gujarat_dump_loads() {
        let s = load_token_dump(crate::fixtures::GUJARAT_DUMP.as_bytes()).unwrap();
        let texts: Vec<&str> = s.tokens.iter().map(|t| t.text.as_str()).collect();
        for want in ["ENGLISH", "063", "SIXTY", "THREE"] {
            assert!(texts.contains(&want), "missing {want}");
        }
    }

    fn token_strategy() -> impl Strategy<Value = OcrToken> {
        (
            prop::array::uniform4((0u32..5000, 0u32..5000)),
            "[A-Za-z0-9 ]{0,8}[A-Za-z0-9]",
            0u32..=1000,
        )
            .prop_map(|(pts, text, c)| {
                let polygon = pts.map(|(x, y)| Point::new(x as f64 / 4.0, y as f64 / 4.0));
                OcrToken::new(polygon, text, c as f64 / 1000.0).unwrap()
            })
    }

    proptest! {
        #[test]
        fn dump_round_trip(tokens in prop::collection::vec(token_strategy(), 0..20), page in 1u32..9) {
            let stream = TokenStream { source_id: "doc".into(), page, tokens };
            let back = load_token_dump(&to_token_dump(&stream)).unwrap();
            prop_assert_eq!(back, stream);
        }
    }
}
