//! Full extraction on the Gujarat sample, printed as a form and as JSON.

use marksheet_core::{fixtures, Lexicon, Pipeline, PipelineConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pipeline = Pipeline::new(Lexicon::builtin(), PipelineConfig::default());
    let result = pipeline.parse_bytes("gujarat", fixtures::GUJARAT_DUMP.as_bytes())?;

    println!("{} ({})", result.source_id, result.detected_state);
    println!("{:<16}{:>5}{:>6}  rule", "subject", "max", "mark");
    let mut total = 0u32;
    for r in &result.records {
        let mark = r.final_mark.map_or("-".to_string(), |m| m.to_string());
        println!("{:<16}{:>5}{:>6}  {:?}", r.canonical_subject, r.max_mark, mark, r.resolution);
        total += r.final_mark.unwrap_or(0) as u32;
    }
    let pct = 100.0 * total as f64 / (100 * result.records.len().max(1)) as f64;
    println!("total {total}, {pct:.2}%");
    for d in &result.diagnostics {
        println!("note: {d:?}");
    }
    println!("{}", serde_json::to_string_pretty(&result.records[0])?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
