//! Reading an OCR token dump and what a bad record looks like.

use marksheet_core::ocr::{load_token_dump, DumpParseError};
use marksheet_core::{fixtures, layout};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let stream = load_token_dump(fixtures::GUJARAT_DUMP.as_bytes())?;
    println!("{} page {}: {} tokens", stream.source_id, stream.page, stream.tokens.len());
    for t in stream.tokens.iter().take(4) {
        let (cx, cy) = layout::token_center(t);
        println!("  {:<12} center=({cx:.0},{cy:.0}) conf={:.2}", t.text, t.confidence);
    }

    let broken = br#"{"source_id": "scan-7", "tokens": [
        {"polygon": [[0,0],[10,0],[10,10],[0,10]], "text": "ENGLISH", "confidence": 0.9},
        {"polygon": [[0,0],[10,0],[10,10]], "text": "063", "confidence": 0.9}
    ]}"#;
    match load_token_dump(broken) {
        Err(e @ DumpParseError::Record { .. }) => {
            println!("rejected record {:?}: {e}", e.record_index());
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
