use super::{BinaryImage, GrayImage};
use std::cmp::Ordering;

/// Between-class variance up to the constant factor `1/N²`, kept as an exact
/// fraction `num / den` so that ties are detected exactly.
#[derive(Clone, Copy)]
struct Score {
    num: u128,
    den: u128,
}

impl Score {
    const ZERO: Score = Score { num: 0, den: 1 };

    fn cmp(self, other: Score) -> Ordering {
        // Compare integer parts first, then remainders; keeps every product
        // within u128 for any realistic image size.
        let (q1, r1) = (self.num / self.den, self.num % self.den);
        let (q2, r2) = (other.num / other.den, other.num % other.den);
        q1.cmp(&q2).then_with(|| (r1 * other.den).cmp(&(r2 * self.den)))
    }
}

/// Otsu threshold over `t ∈ 0..=255`, where a pixel is ink iff `luma < t`.
///
/// Returns 0 (nothing is ink) when no threshold separates two non-empty
/// classes with positive variance, e.g. a constant image. Among thresholds
/// with equal between-class variance the smallest wins.
pub fn otsu_threshold(gray: &GrayImage) -> u8 {
    let mut hist = [0u64; 256];
    for &p in gray.pixels() {
        hist[p as usize] += 1;
    }
    let total = gray.pixels().len() as i128;
    let total_sum: i128 = hist
        .iter()
        .enumerate()
        .map(|(v, &c)| v as i128 * c as i128)
        .sum();

    let mut best_t = 0u8;
    let mut best = Score::ZERO;
    let (mut below, mut below_sum) = (0i128, 0i128);
    // threshold t: class 0 holds values < t
    for t in 1..=255usize {
        below += hist[t - 1] as i128;
        below_sum += (t as i128 - 1) * hist[t - 1] as i128;
        let above = total - below;
        if below == 0 || above == 0 {
            continue;
        }
        let diff = below * total_sum - total * below_sum;
        let score = Score {
            num: diff.unsigned_abs() * diff.unsigned_abs(),
            den: (below * above) as u128,
        };
        if score.cmp(best) == Ordering::Greater {
            best = score;
            best_t = t as u8;
        }
    }
    best_t
}

/// Global Otsu binarization; dark pixels (below the threshold) become ink.
pub fn binarize_otsu(gray: &GrayImage) -> BinaryImage {
    let t = otsu_threshold(gray);
    let pixels = gray.pixels().iter().map(|&p| p < t).collect();
    BinaryImage::new(gray.width(), gray.height(), pixels).expect("dimensions already validated")
}
