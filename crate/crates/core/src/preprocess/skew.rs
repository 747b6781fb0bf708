use super::{BinaryImage, PreprocessError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub struct SkewConfig {
    /// Candidate angles span `-sweep..=sweep` degrees.
    pub sweep: f64,
    pub step: f64,
}

impl Default for SkewConfig {
    fn default() -> Self {
        Self {
            sweep: 15.0,
            step: 0.25,
        }
    }
}

impl SkewConfig {
    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && (0.0..=45.0).contains(&self.sweep)) {
            return Err(PreprocessError::InvalidParameter(format!(
                "skew sweep {} / step {} out of range",
                self.sweep, self.step
            )));
        }
        Ok(())
    }

    /// Candidate angles ordered by increasing magnitude (0, +s, -s, +2s, ...).
    fn angles(&self) -> Vec<f64> {
        let n = (self.sweep / self.step + 1e-9).floor() as i64;
        let mut out = vec![0.0];
        for k in 1..=n {
            out.push(k as f64 * self.step);
            out.push(-(k as f64) * self.step);
        }
        out
    }
}

/// Detected text tilt. A positive angle means the text leans counter-clockwise;
/// rotating the page by `angle` with [`super::rotate_binary`] levels it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkewEstimate {
    pub angle: f64,
    pub confidence: f64,
}

/// Projection-profile variance for every candidate angle.
///
/// With `columns = false` the ink is projected onto rows after undoing a tilt
/// of each angle; with `columns = true` the image is transposed first.
fn profile_variances(binary: &BinaryImage, angles: &[f64], columns: bool) -> Vec<f64> {
    let (w, h) = (binary.width() as f64, binary.height() as f64);
    let (cx, cy) = (w / 2.0, h / 2.0);
    let radius = ((w * w + h * h).sqrt() / 2.0).ceil() as i64 + 1;
    let bins = (2 * radius + 1) as usize;

    let points: Vec<(f64, f64)> = binary
        .ink_pixels()
        .map(|(x, y)| {
            let (px, py) = (x as f64 + 0.5 - cx, y as f64 + 0.5 - cy);
            if columns {
                (py, px)
            } else {
                (px, py)
            }
        })
        .collect();
    let n = points.len() as f64;
    let mean = n / bins as f64;

    let mut hist = vec![0u32; bins];
    angles
        .iter()
        .map(|&deg| {
            let (s, c) = deg.to_radians().sin_cos();
            hist.iter_mut().for_each(|b| *b = 0);
            for &(x, y) in &points {
                let row = (x * s + y * c).round() as i64 + radius;
                hist[row as usize] += 1;
            }
            let sq: f64 = hist.iter().map(|&b| (b as f64) * (b as f64)).sum();
            sq / bins as f64 - mean * mean
        })
        .collect()
}

/// Finds the tilt whose correction maximizes row-profile variance.
///
/// Ties go to the smaller magnitude. Confidence is `(best - median) / best`
/// over the sweep; a page without ink yields angle 0 with confidence 0.
pub fn estimate_skew(binary: &BinaryImage, config: &SkewConfig) -> Result<SkewEstimate> {
    config.validate()?;
    let blank = SkewEstimate {
        angle: 0.0,
        confidence: 0.0,
    };
    if binary.ink_count() == 0 {
        return Ok(blank);
    }
    let angles = config.angles();
    let variances = profile_variances(binary, &angles, false);

    let mut best = 0;
    for (i, &v) in variances.iter().enumerate() {
        if v > variances[best] {
            best = i;
        }
    }
    let best_var = variances[best];
    if best_var <= 0.0 {
        return Ok(blank);
    }
    let mut sorted = variances.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    Ok(SkewEstimate {
        angle: angles[best],
        confidence: ((best_var - median) / best_var).clamp(0.0, 1.0),
    })
}

/// Rejects pages whose text runs vertically, i.e. rotated by about 90 degrees.
///
/// Compares the best column-profile variance with the best row-profile
/// variance over the skew sweep. Upside-down pages are not detectable this way.
pub fn check_orientation(binary: &BinaryImage, config: &SkewConfig, ratio: f64) -> Result<()> {
    config.validate()?;
    if binary.ink_count() == 0 {
        return Ok(());
    }
    let angles = config.angles();
    let best = |cols| {
        profile_variances(binary, &angles, cols)
            .into_iter()
            .fold(0.0f64, f64::max)
    };
    let (rows, cols) = (best(false), best(true));
    if cols > ratio * rows {
        return Err(PreprocessError::OrientationUnsupported(format!(
            "text appears vertical (column/row profile variance {:.2}); pages rotated 90 degrees or more are not supported",
            cols / rows.max(f64::MIN_POSITIVE)
        )));
    }
    Ok(())
}
