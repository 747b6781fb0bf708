//! Marks written out in words, as printed next to the numeric total.

use marksheet_core::marks::parse_number_word;
use marksheet_core::Lexicon;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::builtin();
    let cases: &[&[&str]] = &[
        &["SIXTY", "THREE"],
        &["SIXTY-THREE"],
        &["SIXTYTHREE"],
        &["FOURTY", "TWO"],
        &["ONE", "HUNDRED"],
        &["ZERO"],
        &["SEVENTEEN", "ONLY"],
        &["PASS"],
    ];
    for words in cases {
        println!("{:<22} -> {:?}", words.join(" "), parse_number_word(words, lex.number_words()));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
