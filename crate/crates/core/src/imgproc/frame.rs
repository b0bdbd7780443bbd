//! Frame and grayscale image types with the shared resampling primitives.

use crate::error::{Error, Result};

/// Side length of the canonical analysis grid used for frame distances,
/// saliency maps and amplitude spectra.
pub const ANALYSIS_SIZE: usize = 64;

/// One decoded RGB video frame. Channel values live in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    width: usize,
    height: usize,
    /// Row-major interleaved RGB, length `width * height * 3`.
    data: Vec<f64>,
}

impl Frame {
    /// Minimum frame side length accepted by the extractors.
    pub const MIN_SIDE: usize = 8;

    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width < Self::MIN_SIDE || height < Self::MIN_SIDE {
            return Err(Error::Validation(format!(
                "frame dimensions {width}x{height} below minimum {}",
                Self::MIN_SIDE
            )));
        }
        if data.len() != width * height * 3 {
            return Err(Error::DimensionMismatch {
                expected: width * height * 3,
                actual: data.len(),
                context: "frame rgb buffer".into(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Builds a frame from 8-bit interleaved RGB.
    pub fn from_rgb8(width: usize, height: usize, bytes: &[u8]) -> Result<Self> {
        let data = bytes.iter().map(|&b| f64::from(b) / 255.0).collect();
        Self::new(width, height, data)
    }

    /// Constant-color frame, mostly useful in tests and fixtures.
    pub fn filled(width: usize, height: usize, rgb: [f64; 3]) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height * 3);
        for _ in 0..width * height {
            data.extend_from_slice(&rgb);
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn rgb(&self, x: usize, y: usize) -> [f64; 3] {
        let i = (y * self.width + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    #[inline]
    pub fn set_rgb(&mut self, x: usize, y: usize, rgb: [f64; 3]) {
        let i = (y * self.width + x) * 3;
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    pub fn pixels(&self) -> impl Iterator<Item = [f64; 3]> + '_ {
        self.data.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }

    /// Extracts one channel as a grayscale plane (0 = R, 1 = G, 2 = B).
    pub fn channel(&self, idx: usize) -> GrayImage {
        let data = self.data.iter().skip(idx).step_by(3).copied().collect();
        GrayImage::from_raw(self.width, self.height, data)
    }

    /// Bilinear resize with corner alignment; single-row/column targets sample
    /// the source center.
    pub fn resize_bilinear(&self, width: usize, height: usize) -> Frame {
        let mut data = vec![0.0; width * height * 3];
        for y in 0..height {
            let sy = src_coord(y, height, self.height);
            for x in 0..width {
                let sx = src_coord(x, width, self.width);
                let px = bilinear_rgb(self, sx, sy);
                let i = (y * width + x) * 3;
                data[i..i + 3].copy_from_slice(&px);
            }
        }
        Frame {
            width,
            height,
            data,
        }
    }
}

/// Single-channel luminance image, values clamped to `[0, 1]` when produced
/// by [`to_gray`]; derived planes (opponent channels, wavelet bands) may hold
/// arbitrary reals.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl GrayImage {
    pub fn from_raw(width: usize, height: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), width * height, "gray buffer size mismatch");
        Self {
            width,
            height,
            data,
        }
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        Self::from_raw(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.data[y * self.width + x] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Clamped sample used by filters near the border.
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> f64 {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.get(x, y)
    }

    pub fn resize_bilinear(&self, width: usize, height: usize) -> GrayImage {
        let mut data = vec![0.0; width * height];
        for y in 0..height {
            let sy = src_coord(y, height, self.height);
            for x in 0..width {
                let sx = src_coord(x, width, self.width);
                data[y * width + x] = bilinear_gray(self, sx, sy);
            }
        }
        GrayImage {
            width,
            height,
            data,
        }
    }

    /// Crop to the half-open rectangle `[x0, x1) x [y0, y1)`.
    pub fn crop(&self, x0: usize, y0: usize, x1: usize, y1: usize) -> GrayImage {
        let mut data = Vec::with_capacity((x1 - x0) * (y1 - y0));
        for y in y0..y1 {
            data.extend_from_slice(&self.data[y * self.width + x0..y * self.width + x1]);
        }
        GrayImage::from_raw(x1 - x0, y1 - y0, data)
    }

    /// Mirror around the vertical axis.
    pub fn flip_horizontal(&self) -> GrayImage {
        let mut out = self.clone();
        for y in 0..self.height {
            for x in 0..self.width {
                out.set(x, y, self.get(self.width - 1 - x, y));
            }
        }
        out
    }
}

fn src_coord(dst: usize, dst_len: usize, src_len: usize) -> f64 {
    if dst_len > 1 {
        dst as f64 * (src_len - 1) as f64 / (dst_len - 1) as f64
    } else {
        (src_len - 1) as f64 / 2.0
    }
}

fn bilinear_gray(img: &GrayImage, sx: f64, sy: f64) -> f64 {
    let x0 = sx.floor() as usize;
    let y0 = sy.floor() as usize;
    let x1 = (x0 + 1).min(img.width - 1);
    let y1 = (y0 + 1).min(img.height - 1);
    let fx = sx - x0 as f64;
    let fy = sy - y0 as f64;
    // Incremental form: exact for equal neighbors.
    let a = img.get(x0, y0);
    let b = img.get(x1, y0);
    let c = img.get(x0, y1);
    let d = img.get(x1, y1);
    let top = a + fx * (b - a);
    let bot = c + fx * (d - c);
    top + fy * (bot - top)
}

fn bilinear_rgb(frame: &Frame, sx: f64, sy: f64) -> [f64; 3] {
    let x0 = sx.floor() as usize;
    let y0 = sy.floor() as usize;
    let x1 = (x0 + 1).min(frame.width - 1);
    let y1 = (y0 + 1).min(frame.height - 1);
    let fx = sx - x0 as f64;
    let fy = sy - y0 as f64;
    let mut out = [0.0; 3];
    let (a, b, c, d) = (
        frame.rgb(x0, y0),
        frame.rgb(x1, y0),
        frame.rgb(x0, y1),
        frame.rgb(x1, y1),
    );
    for ch in 0..3 {
        let top = a[ch] + fx * (b[ch] - a[ch]);
        let bot = c[ch] + fx * (d[ch] - c[ch]);
        out[ch] = top + fy * (bot - top);
    }
    out
}

/// Rec. 601 luminance, clamped to `[0, 1]`. Written so achromatic pixels
/// map to their value exactly (the three weights do not sum to 1.0 in
/// binary floating point).
pub fn to_gray(frame: &Frame) -> GrayImage {
    let data = frame
        .pixels()
        .map(|[r, g, b]| (g + 0.299 * (r - g) + 0.114 * (b - g)).clamp(0.0, 1.0))
        .collect();
    GrayImage::from_raw(frame.width, frame.height, data)
}

/// Luminance plane resampled to the canonical 64x64 analysis grid.
pub fn gray_analysis(frame: &Frame) -> GrayImage {
    to_gray(frame).resize_bilinear(ANALYSIS_SIZE, ANALYSIS_SIZE)
}

/// Root-mean-square distance between two equally sized value grids. This is
/// the single distance primitive behind frame distances and saliency-map
/// distances, so thresholds transfer across resolutions.
pub fn rms_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "rms_distance operands differ in size");
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (sum / a.len() as f64).sqrt()
}

/// Frame distance: RMS luminance difference on the 64x64 analysis grid,
/// always in `[0, 1]`.
pub fn frame_distance(a: &Frame, b: &Frame) -> f64 {
    rms_distance(gray_analysis(a).data(), gray_analysis(b).data())
}

/// RGB to HSV with hue in degrees `[0, 360)`; achromatic pixels get hue 0.
pub fn rgb_to_hsv(rgb: [f64; 3]) -> (f64, f64, f64) {
    let [r, g, b] = rgb;
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let v = max;
    let s = if max > 0.0 { delta / max } else { 0.0 };
    let h = if delta <= f64::EPSILON {
        0.0
    } else if (max - r).abs() < f64::EPSILON {
        60.0 * (((g - b) / delta).rem_euclid(6.0))
    } else if (max - g).abs() < f64::EPSILON {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    (h.rem_euclid(360.0), s, v)
}
