//! Bundled test documents.

use std::path::PathBuf;

/// Token dump of the Gujarat sample certificate.
pub const GUJARAT_DUMP: &str = include_str!("../fixtures/gujarat.ocr.json");

/// Gold marks for [`GUJARAT_DUMP`].
pub const GUJARAT_GOLD: &str = include_str!("../fixtures/gujarat.gold.json");

/// Directory holding `fixtures/` of this crate in a source checkout.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// The 20-document synthetic corpus: `*.ocr.json` plus `gold.json`.
pub fn corpus_dir() -> PathBuf {
    fixtures_dir().join("corpus")
}
