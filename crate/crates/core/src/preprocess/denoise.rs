use super::{BinaryImage, PreprocessError, Result};

/// Majority filter over a `window × window` neighbourhood with replicated
/// borders. A pixel becomes ink iff more than half its window is ink.
pub fn denoise_median(binary: &BinaryImage, window: usize) -> Result<BinaryImage> {
    if window < 3 || window.is_multiple_of(2) {
        return Err(PreprocessError::InvalidParameter(format!(
            "denoise window must be odd and >= 3, got {window}"
        )));
    }
    let (w, h) = (binary.width(), binary.height());
    let r = (window / 2) as isize;
    let half = window * window / 2;

    // column sums of ink over the clamped vertical span, rebuilt per row
    let mut out = Vec::with_capacity(w * h);
    let mut col = vec![0usize; w];
    for y in 0..h {
        for (x, c) in col.iter_mut().enumerate() {
            *c = (-r..=r)
                .filter(|dy| binary.get(x, clamp(y as isize + dy, h)))
                .count();
        }
        for x in 0..w {
            let count: usize = (-r..=r).map(|dx| col[clamp(x as isize + dx, w)]).sum();
            out.push(count > half);
        }
    }
    BinaryImage::new(w, h, out)
}

fn clamp(v: isize, len: usize) -> usize {
    v.clamp(0, len as isize - 1) as usize
}
