//! Image input through an external OCR command.
//!
//! Any program that takes an image path and prints a token dump on stdout
//! works. This example stands in a shell one-liner that ignores the pixels
//! and prints the Gujarat dump, so it runs anywhere `sh` exists.

use marksheet_core::preprocess::{encode_png, rotate_binary};
use marksheet_core::{fixtures, synth, EngineConfig, Lexicon, Pipeline, PipelineConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let scan = dir.path().join("scan-0042.png");
    let tilted = rotate_binary(&synth::ruled_text_page(5), 3.0)?;
    std::fs::write(&scan, encode_png(&tilted)?)?;

    let dump = fixtures::fixtures_dir().join("gujarat.ocr.json");
    let command = format!("sh -c 'test -s \"$1\" && cat \"$0\"' '{}' {{input}}", dump.display());
    let config = PipelineConfig::default().with_engine(EngineConfig::new(command));
    let pipeline = Pipeline::new(Lexicon::builtin(), config);

    let result = pipeline.parse_document(&scan)?;
    println!("{}: state {}, {} records", result.source_id, result.detected_state, result.records.len());
    for r in &result.records {
        println!("  {:<15} {:?}", r.canonical_subject, r.final_mark);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
