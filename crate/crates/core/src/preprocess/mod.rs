//! Raster preprocessing: grayscale conversion, Otsu binarization, majority
//! denoising, projection-profile deskew and rotation.
//!
//! All operations are pure and return new images. Pixel buffers are row-major
//! with the origin at the top-left corner and y increasing downward.

mod binarize;
mod denoise;
pub mod pnm;
mod rotate;
mod skew;

pub use binarize::{binarize_otsu, otsu_threshold};
pub use denoise::denoise_median;
pub use rotate::{rotate_binary, rotate_gray, MAX_ROTATION_DEGREES};
pub use skew::{check_orientation, estimate_skew, SkewConfig, SkewEstimate};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PreprocessError {
    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("orientation unsupported: {0}")]
    OrientationUnsupported(String),

    #[error("image decode failed: {0}")]
    Decode(String),
}

pub type Result<T> = std::result::Result<T, PreprocessError>;

/// 8-bit RGB raster, row-major, 3 bytes per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }
}

/// 8-bit luminance raster. 0 is black, 255 is white.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Renders a binary image as pure black ink on white paper.
    pub fn from_binary(binary: &BinaryImage) -> Self {
        let pixels = binary
            .pixels()
            .iter()
            .map(|&ink| if ink { 0 } else { 255 })
            .collect();
        Self {
            width: binary.width(),
            height: binary.height(),
            pixels,
        }
    }
}

/// Boolean raster where `true` marks ink (foreground).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn blank(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![false; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, ink: bool) {
        self.pixels[y * self.width + x] = ink;
    }

    pub fn ink_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    /// Iterates over `(x, y)` of every ink pixel.
    pub fn ink_pixels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.pixels
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(move |(i, _)| (i % w, i / w))
    }
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(PreprocessError::InvalidImage(format!(
            "zero dimension {width}x{height}"
        )));
    }
    if width.checked_mul(height) != Some(len) {
        return Err(PreprocessError::InvalidImage(format!(
            "pixel count {len} does not match {width}x{height}"
        )));
    }
    Ok(())
}

/// BT.601 luma, `round(0.299 R + 0.587 G + 0.114 B)` with halves rounded up.
pub fn luma(rgb: [u8; 3]) -> u8 {
    let [r, g, b] = rgb.map(u32::from);
    // weights sum to 1000, so the result never exceeds 255
    ((299 * r + 587 * g + 114 * b + 500) / 1000) as u8
}

pub fn to_grayscale(image: &RgbImage) -> GrayImage {
    GrayImage {
        width: image.width,
        height: image.height,
        pixels: image.pixels.iter().map(|&p| luma(p)).collect(),
    }
}

/// Knobs for the full preprocessing chain.
#[derive(Debug, Clone, PartialEq)]
pub struct PreprocessConfig {
    pub denoise_window: usize,
    pub skew: SkewConfig,
    /// Column/row projection variance ratio above which the page is taken to be
    /// rotated by roughly 90 degrees.
    pub orientation_ratio: f64,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            denoise_window: 3,
            skew: SkewConfig::default(),
            orientation_ratio: 1.5,
        }
    }
}

/// Output of [`preprocess`]: the cleaned, deskewed page and the skew found.
#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub image: BinaryImage,
    pub skew: SkewEstimate,
    pub threshold: u8,
}

/// Grayscale → Otsu → majority denoise → orientation check → deskew.
pub fn preprocess(gray: &GrayImage, config: &PreprocessConfig) -> Result<Preprocessed> {
    let threshold = otsu_threshold(gray);
    let binary = binarize_otsu(gray);
    let clean = denoise_median(&binary, config.denoise_window)?;
    check_orientation(&clean, &config.skew, config.orientation_ratio)?;
    let skew = estimate_skew(&clean, &config.skew)?;
    let image = if skew.angle.abs() >= config.skew.step {
        rotate_binary(&clean, skew.angle)?
    } else {
        clean
    };
    Ok(Preprocessed {
        image,
        skew,
        threshold,
    })
}

/// Decodes PNG (gray or colour) or binary PGM bytes into luminance.
pub fn decode_gray(bytes: &[u8]) -> Result<GrayImage> {
    let decoded =
        image::load_from_memory(bytes).map_err(|e| PreprocessError::Decode(e.to_string()))?;
    let rgb = decoded.to_rgb8();
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    let pixels = rgb.pixels().map(|p| p.0).collect();
    Ok(to_grayscale(&RgbImage::new(w, h, pixels)?))
}

/// Encodes a binary page as an 8-bit grayscale PNG for external engines.
pub fn encode_png(binary: &BinaryImage) -> Result<Vec<u8>> {
    let gray = GrayImage::from_binary(binary);
    let buf = image::GrayImage::from_raw(gray.width as u32, gray.height as u32, gray.pixels)
        .ok_or_else(|| PreprocessError::InvalidImage("buffer size mismatch".into()))?;
    let mut out = std::io::Cursor::new(Vec::new());
    buf.write_to(&mut out, image::ImageFormat::Png)
        .map_err(|e| PreprocessError::Decode(e.to_string()))?;
    Ok(out.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luma_identities() {
        assert_eq!(luma([255, 255, 255]), 255);
        assert_eq!(luma([0, 0, 0]), 0);
        // 0.299 * 255 = 76.245
        assert_eq!(luma([255, 0, 0]), 76);
        assert_eq!(luma([0, 255, 0]), 150);
        assert_eq!(luma([0, 0, 255]), 29);
    }

    #[test]
    fn gray_input_is_preserved() {
        for v in 0..=255u8 {
            assert_eq!(luma([v, v, v]), v);
        }
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(matches!(
            RgbImage::new(0, 3, vec![]),
            Err(PreprocessError::InvalidImage(_))
        ));
        assert!(matches!(
            GrayImage::new(2, 2, vec![0; 3]),
            Err(PreprocessError::InvalidImage(_))
        ));
    }

    #[test]
    fn png_round_trip_through_decoder() {
        let mut bin = BinaryImage::blank(5, 4).unwrap();
        bin.set(1, 2, true);
        let png = encode_png(&bin).unwrap();
        let gray = decode_gray(&png).unwrap();
        assert_eq!(gray.get(1, 2), 0);
        assert_eq!(gray.get(0, 0), 255);
        assert_eq!(binarize_otsu(&gray), bin);
    }

    proptest::proptest! {
        #[test]
        fn luma_is_monotone(r in 0u8..=255, g in 0u8..=255, b in 0u8..=255, ch in 0usize..3, bump in 1u8..=255) {
            let base = [r, g, b];
            let mut raised = base;
            raised[ch] = raised[ch].saturating_add(bump);
            proptest::prop_assert!(luma(raised) >= luma(base));
        }
    }
}
