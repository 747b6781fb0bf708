//! Binarize, denoise and deskew a tilted page.
//!
//!     cargo run -p marksheet-core --example preprocess_image [OUT_DIR]
//!
//! With OUT_DIR, the tilted input is written as PGM and the cleaned page as
//! PBM and PNG.

use marksheet_core::preprocess::{self, pnm, GrayImage, PreprocessConfig};
use marksheet_core::synth;
use std::path::PathBuf;

pub fn run_example(out_dir: Option<PathBuf>) -> Result<(), Box<dyn std::error::Error>> {
    let page = synth::ruled_text_page(11);
    let tilted = preprocess::rotate_gray(&GrayImage::from_binary(&page), 4.0)?;

    let cleaned = preprocess::preprocess(&tilted, &PreprocessConfig::default())?;
    println!("otsu threshold : {}", cleaned.threshold);
    println!(
        "skew estimate  : {:+.2} deg (confidence {:.2})",
        cleaned.skew.angle, cleaned.skew.confidence
    );
    println!(
        "page           : {}x{} -> {}x{}",
        tilted.width(),
        tilted.height(),
        cleaned.image.width(),
        cleaned.image.height()
    );

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(&dir)?;
        std::fs::write(dir.join("tilted.pgm"), pnm::pgm_bytes(&tilted))?;
        std::fs::write(dir.join("cleaned.pbm"), pnm::pbm_bytes(&cleaned.image))?;
        std::fs::write(dir.join("cleaned.png"), preprocess::encode_png(&cleaned.image)?)?;
        println!("wrote tilted.pgm, cleaned.pbm, cleaned.png to {}", dir.display());
    }

    // Pages turned a quarter or more are refused rather than guessed at.
    let sideways = transpose(&GrayImage::from_binary(&page));
    match preprocess::preprocess(&sideways, &PreprocessConfig::default()) {
        Err(e) => println!("sideways page  : {e}"),
        Ok(p) => println!("sideways page  : accepted at {:+.2} deg", p.skew.angle),
    }
    Ok(())
}

fn transpose(g: &GrayImage) -> GrayImage {
    let (w, h) = (g.width(), g.height());
    let mut px = Vec::with_capacity(w * h);
    for y in 0..w {
        for x in 0..h {
            px.push(g.get(y, h - 1 - x));
        }
    }
    GrayImage::new(h, w, px).expect("same size")
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(std::env::args().nth(1).map(PathBuf::from))
}
