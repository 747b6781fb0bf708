//! Runs the bundled synthetic corpus under each version preset and prints
//! the bucket table side by side.
//!
//!     cargo run -p marksheet-core --example ablation

use marksheet_core::{evaluate_corpus, fixtures, load_gold, render_table, Lexicon, Pipeline, PipelineConfig, VersionPreset};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = fixtures::corpus_dir();
    let gold = load_gold(&std::fs::read(dir.join("gold.json"))?)?;
    let base = Pipeline::new(Lexicon::builtin(), PipelineConfig::default());

    let mut reports = Vec::new();
    for version in VersionPreset::ALL {
        let pipeline = base.with_config(PipelineConfig::preset(version));
        let results = pipeline.run_corpus(&dir, 4)?;
        reports.push((version.to_string(), evaluate_corpus(&results, &gold)?));
    }
    let columns: Vec<(&str, _)> = reports.iter().map(|(l, r)| (l.as_str(), r)).collect();
    print!("{}", render_table(&columns));

    println!();
    println!("{:<28} {:>3} {:>3}", "document", "v3", "v4");
    for (a, b) in reports[0].1.per_document.iter().zip(&reports[2].1.per_document) {
        println!("{:<28} {:>3} {:>3}", a.source_id, a.correct_count, b.correct_count);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
