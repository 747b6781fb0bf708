//! Tokens arrive in arbitrary order; grouping rebuilds the printed rows.

use marksheet_core::layout::{group_lines, line_text, LayoutConfig};
use marksheet_core::synth;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // A jittered, shuffled corpus page.
    let doc = &synth::synthetic_corpus(synth::CORPUS_SEED)[3];
    println!("first tokens as emitted: {:?}", doc.stream.tokens.iter().take(5).map(|t| &t.text).collect::<Vec<_>>());

    let lines = group_lines(&doc.stream, &LayoutConfig::default());
    for (i, line) in lines.iter().enumerate() {
        println!("{i:>2} y={:>5.1}  {}", line.anchor_y, line_text(line));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
