//! State detection and subject matching, with and without spell correction.

use marksheet_core::layout::{group_lines, LayoutConfig};
use marksheet_core::lexicon::{self, correct_subject, detect_state, match_subjects, segment_merged, MatchConfig};
use marksheet_core::{synth, Lexicon};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::builtin();
    println!("similarity(SCIENCF, SCIENCE) = {:.4}", lexicon::similarity("SCIENCF", "SCIENCE"));

    let subjects = lex.subjects_for("Gujarat");
    let vocab = lex.subject_vocabulary("Gujarat");
    let cfg = MatchConfig::default();
    println!("segment SOCIALSCIENCE -> {:?}", segment_merged("SOCIALSCIENCE", &vocab, &cfg));
    println!("correct MATHEMAT1CS  -> {:?}", correct_subject(&["MATHEMAT1CS"], subjects, &cfg));

    let doc = synth::gujarat_marksheet_merged();
    let lines = group_lines(&doc.stream, &LayoutConfig::default());
    let state = detect_state(&lines, &lex, &cfg);
    println!("detected state: {state}");

    for spell_correction in [false, true] {
        let cfg = MatchConfig { spell_correction, ..MatchConfig::default() };
        let out = match_subjects(&lines, &state, &lex, &cfg);
        println!("spell correction {}:", if spell_correction { "on" } else { "off" });
        for m in &out.matches {
            println!("  line {:>2}  {:<15} {:?} ({:.3})", m.line_index, m.canonical_subject, m.via, m.score);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
