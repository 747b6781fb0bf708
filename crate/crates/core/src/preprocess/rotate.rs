use super::{BinaryImage, GrayImage, PreprocessError, Result};

/// Rotations beyond this magnitude are refused; recovering pages turned by
/// 90 degrees or more is not supported.
pub const MAX_ROTATION_DEGREES: f64 = 45.0;

/// Geometry shared by both rotation flavours. Positive angles turn the page
/// clockwise as displayed (y axis pointing down).
struct Rotation {
    cos: f64,
    sin: f64,
    src_center: (f64, f64),
    dst_center: (f64, f64),
    width: usize,
    height: usize,
}

impl Rotation {
    fn new(width: usize, height: usize, degrees: f64) -> Result<Self> {
        if !degrees.is_finite() || degrees.abs() > MAX_ROTATION_DEGREES {
            return Err(PreprocessError::OrientationUnsupported(format!(
                "rotation of {degrees} degrees exceeds ±{MAX_ROTATION_DEGREES}"
            )));
        }
        let (sin, cos) = degrees.to_radians().sin_cos();
        let (w, h) = (width as f64, height as f64);
        // keep the parity of each side so the centres stay pixel-aligned
        let fit = |extent: f64, orig: usize| {
            let mut n = (extent - 1e-9).ceil().max(1.0) as usize;
            if n < orig {
                n = orig;
            }
            if (n - orig) % 2 == 1 {
                n += 1;
            }
            n
        };
        let new_w = fit(w * cos.abs() + h * sin.abs(), width);
        let new_h = fit(w * sin.abs() + h * cos.abs(), height);
        Ok(Self {
            cos,
            sin,
            src_center: (w / 2.0, h / 2.0),
            dst_center: (new_w as f64 / 2.0, new_h as f64 / 2.0),
            width: new_w,
            height: new_h,
        })
    }

    /// Maps an output pixel centre back to continuous source coordinates.
    fn source(&self, ox: usize, oy: usize) -> (f64, f64) {
        let px = ox as f64 + 0.5 - self.dst_center.0;
        let py = oy as f64 + 0.5 - self.dst_center.1;
        let sx = px * self.cos + py * self.sin;
        let sy = -px * self.sin + py * self.cos;
        (sx + self.src_center.0, sy + self.src_center.1)
    }
}

/// Nearest-neighbour rotation about the image centre onto an enlarged canvas.
pub fn rotate_binary(image: &BinaryImage, degrees: f64) -> Result<BinaryImage> {
    let rot = Rotation::new(image.width(), image.height(), degrees)?;
    if degrees == 0.0 {
        return Ok(image.clone());
    }
    let (w, h) = (image.width() as f64, image.height() as f64);
    let mut pixels = Vec::with_capacity(rot.width * rot.height);
    for oy in 0..rot.height {
        for ox in 0..rot.width {
            let (sx, sy) = rot.source(ox, oy);
            let ink = sx >= 0.0
                && sy >= 0.0
                && sx < w
                && sy < h
                && image.get(sx as usize, sy as usize);
            pixels.push(ink);
        }
    }
    BinaryImage::new(rot.width, rot.height, pixels)
}

/// Bilinear rotation about the image centre; uncovered area is white.
pub fn rotate_gray(image: &GrayImage, degrees: f64) -> Result<GrayImage> {
    let rot = Rotation::new(image.width(), image.height(), degrees)?;
    if degrees == 0.0 {
        return Ok(image.clone());
    }
    let (w, h) = (image.width() as isize, image.height() as isize);
    let sample = |x: isize, y: isize| -> f64 {
        if x < 0 || y < 0 || x >= w || y >= h {
            255.0
        } else {
            image.get(x as usize, y as usize) as f64
        }
    };
    let mut pixels = Vec::with_capacity(rot.width * rot.height);
    for oy in 0..rot.height {
        for ox in 0..rot.width {
            let (sx, sy) = rot.source(ox, oy);
            let (fx, fy) = (sx - 0.5, sy - 0.5);
            let (x0, y0) = (fx.floor(), fy.floor());
            let (ax, ay) = (fx - x0, fy - y0);
            let (x0, y0) = (x0 as isize, y0 as isize);
            let top = sample(x0, y0) * (1.0 - ax) + sample(x0 + 1, y0) * ax;
            let bottom = sample(x0, y0 + 1) * (1.0 - ax) + sample(x0 + 1, y0 + 1) * ax;
            let v = top * (1.0 - ay) + bottom * ay;
            pixels.push(v.round().clamp(0.0, 255.0) as u8);
        }
    }
    GrayImage::new(rot.width, rot.height, pixels)
}
