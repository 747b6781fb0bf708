//! Bucket arithmetic for a 54-certificate run: 39 fully correct, 8 with four
//! subjects right, 7 with three or fewer.

use marksheet_core::eval::{DocumentScore, EvalReport};
use marksheet_core::render_table;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let scores = [(5, 39), (4, 8), (3, 4), (2, 3)]
        .into_iter()
        .flat_map(|(correct, n)| std::iter::repeat_n(correct, n))
        .enumerate()
        .map(|(i, correct_count)| DocumentScore {
            source_id: format!("cert-{i:02}"),
            correct_count,
            expected_count: 5,
        })
        .collect();
    let report = EvalReport::from_scores(scores);
    print!("{}", render_table(&[("54 certificates", &report)]));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
