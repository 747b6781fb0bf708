//! Binary PGM (P5) and PBM (P4) writers.
//!
//! Reading goes through the `image` crate; see [`super::decode_gray`].

use super::{BinaryImage, GrayImage};
use std::io::{self, Write};

/// Writes an 8-bit P5 graymap with maxval 255.
pub fn write_pgm<W: Write>(out: &mut W, image: &GrayImage) -> io::Result<()> {
    write!(out, "P5\n{} {}\n255\n", image.width(), image.height())?;
    out.write_all(image.pixels())
}

/// Writes a P4 bitmap. Ink is stored as 1 (black); rows are padded to whole
/// bytes, most significant bit first.
pub fn write_pbm<W: Write>(out: &mut W, image: &BinaryImage) -> io::Result<()> {
    write!(out, "P4\n{} {}\n", image.width(), image.height())?;
    let stride = image.width().div_ceil(8);
    let mut row = vec![0u8; stride];
    for y in 0..image.height() {
        row.iter_mut().for_each(|b| *b = 0);
        for x in 0..image.width() {
            if image.get(x, y) {
                row[x / 8] |= 0x80 >> (x % 8);
            }
        }
        out.write_all(&row)?;
    }
    Ok(())
}

pub fn pgm_bytes(image: &GrayImage) -> Vec<u8> {
    let mut buf = Vec::new();
    write_pgm(&mut buf, image).expect("writing to a Vec cannot fail");
    buf
}

pub fn pbm_bytes(image: &BinaryImage) -> Vec<u8> {
    let mut buf = Vec::new();
    write_pbm(&mut buf, image).expect("writing to a Vec cannot fail");
    buf
}
