//! Regenerates the bundled fixtures: the Gujarat sample dump and the
//! 20-document synthetic corpus with its gold file.
//!
//!     cargo run -p marksheet-core --example generate_corpus [OUT_DIR]
//!
//! Without OUT_DIR the files land in the crate's `fixtures/` directory.

use marksheet_core::ocr::to_token_dump;
use marksheet_core::{fixtures, synth};
use std::path::PathBuf;

pub fn run_example(out: PathBuf) -> std::io::Result<()> {
    let corpus = out.join("corpus");
    std::fs::create_dir_all(&corpus)?;

    let gujarat = synth::gujarat_marksheet();
    std::fs::write(out.join("gujarat.ocr.json"), to_token_dump(&gujarat.stream))?;
    let gold = serde_json::to_string_pretty(&gujarat.gold).unwrap();
    std::fs::write(out.join("gujarat.gold.json"), gold + "\n")?;

    let docs = synth::synthetic_corpus(synth::CORPUS_SEED);
    for doc in &docs {
        let path = corpus.join(format!("{}.ocr.json", doc.stream.source_id));
        std::fs::write(path, to_token_dump(&doc.stream))?;
    }
    let gold = serde_json::to_string_pretty(&synth::gold_map(&docs)).unwrap();
    std::fs::write(corpus.join("gold.json"), gold + "\n")?;
    println!("wrote {} corpus documents under {}", docs.len(), corpus.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> std::io::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(fixtures::fixtures_dir);
    run_example(out)
}
