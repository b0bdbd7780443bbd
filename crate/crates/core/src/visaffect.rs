//! Frame-level visual affect features: color names, GLCM texture
//! properties, HSV statistics, PAD affect dimensions, and the optional skin
//! and level-of-detail extensions.

use crate::imgproc::{glcm, rgb_to_hsv, sobel_magnitude, to_gray, Frame};
use crate::sensory::hsv_mean_region;

/// Names of the 9 color prototypes, in output order.
pub const COLOR_NAMES: [&str; 9] = [
    "black", "white", "gray", "red", "orange", "yellow", "green", "blue", "purple",
];

/// PAD mapping coefficients on (mean brightness, mean saturation).
const PAD_COEFFS: [(f64, f64); 3] = [(0.69, 0.22), (-0.31, 0.60), (-0.76, 0.32)];

/// Visual affect vector: 25 dimensions in table mode, 27 with the skin and
/// level-of-detail extensions.
#[derive(Debug, Clone, PartialEq)]
pub struct VisualAffectVec {
    pub color_names: [f64; 9],
    /// Contrast, dissimilarity, energy, homogeneity, entropy for offsets
    /// (1,0) then (0,1).
    pub glcm_props: [f64; 10],
    pub hsv_stats: (f64, f64, f64),
    pub pad: (f64, f64, f64),
    /// Present only in extended mode.
    pub skin_ratio: Option<f64>,
    /// Present only in extended mode.
    pub level_of_detail: Option<f64>,
}

impl VisualAffectVec {
    pub const DIM_TABLE: usize = 25;
    pub const DIM_EXTENDED: usize = 27;

    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(Self::DIM_EXTENDED);
        v.extend_from_slice(&self.color_names);
        v.extend_from_slice(&self.glcm_props);
        v.extend_from_slice(&[self.hsv_stats.0, self.hsv_stats.1, self.hsv_stats.2]);
        v.extend_from_slice(&[self.pad.0, self.pad.1, self.pad.2]);
        if let Some(skin) = self.skin_ratio {
            v.push(skin);
        }
        if let Some(lod) = self.level_of_detail {
            v.push(lod);
        }
        v
    }
}

/// Per-pixel assignment to the 9 color prototypes, as fractions summing
/// to 1. Cascade: black (V < 0.15), white (S < 0.15 and V > 0.85),
/// gray (S < 0.15), then by hue range.
pub fn color_names(frame: &Frame) -> [f64; 9] {
    let mut counts = [0.0f64; 9];
    for rgb in frame.pixels() {
        counts[color_name_index(rgb)] += 1.0;
    }
    let n = (frame.width() * frame.height()) as f64;
    for c in counts.iter_mut() {
        *c /= n;
    }
    counts
}

fn color_name_index(rgb: [f64; 3]) -> usize {
    let (h, s, v) = rgb_to_hsv(rgb);
    if v < 0.15 {
        return 0; // black
    }
    if s < 0.15 {
        return if v > 0.85 { 1 } else { 2 }; // white / gray
    }
    match h {
        h if !(15.0..345.0).contains(&h) => 3, // red wraps at 345..15
        h if h < 45.0 => 4,                    // orange
        h if h < 70.0 => 5,                    // yellow
        h if h < 160.0 => 6,                   // green
        h if h < 250.0 => 7,                   // blue
        _ => 8,                                // purple
    }
}

/// The five GLCM statistics for offsets (1,0) and (0,1), concatenated.
pub fn glcm_props(frame: &Frame) -> [f64; 10] {
    let gray = to_gray(frame);
    let mut out = [0.0; 10];
    for (i, offset) in [(1, 0), (0, 1)].into_iter().enumerate() {
        let stats = glcm(&gray, offset).stats();
        out[i * 5..(i + 1) * 5].copy_from_slice(&[
            stats.contrast,
            stats.dissimilarity,
            stats.energy,
            stats.homogeneity,
            stats.entropy,
        ]);
    }
    out
}

/// Whole-frame mean hue (circular, as angle/360), saturation and brightness.
pub fn hsv_stats(frame: &Frame) -> (f64, f64, f64) {
    hsv_mean_region(frame, 0, 0, frame.width(), frame.height())
}

/// Pleasure/arousal/dominance from mean brightness and saturation.
pub fn pad(frame: &Frame) -> (f64, f64, f64) {
    let (_, s, v) = hsv_stats(frame);
    pad_from_means(v, s)
}

/// The PAD linear map itself; exposed for its exact-linearity contract.
pub fn pad_from_means(mean_brightness: f64, mean_saturation: f64) -> (f64, f64, f64) {
    let apply = |(cv, cs): (f64, f64)| cv * mean_brightness + cs * mean_saturation;
    (
        apply(PAD_COEFFS[0]),
        apply(PAD_COEFFS[1]),
        apply(PAD_COEFFS[2]),
    )
}

/// Fraction of pixels passing the RGB skin rule.
pub fn skin_ratio(frame: &Frame) -> f64 {
    let n = (frame.width() * frame.height()) as f64;
    let hits = frame
        .pixels()
        .filter(|&[r, g, b]| {
            let max = r.max(g).max(b);
            let min = r.min(g).min(b);
            r > 0.37 && g > 0.16 && b > 0.08 && r - b > 0.06 && r - g > 0.06 && max - min > 0.06
        })
        .count();
    hits as f64 / n
}

/// Fraction of pixels whose Sobel magnitude exceeds 20% of the maximum.
pub fn level_of_detail(frame: &Frame) -> f64 {
    let mag = sobel_magnitude(&to_gray(frame));
    let max = mag.data().iter().cloned().fold(0.0f64, f64::max);
    if max <= 0.0 {
        return 0.0;
    }
    let threshold = 0.2 * max;
    let hits = mag.data().iter().filter(|&&m| m > threshold).count();
    hits as f64 / mag.data().len() as f64
}

/// Full visual affect vector; `extended` adds skin ratio and level of
/// detail.
pub fn extract_visual_affect(frame: &Frame, extended: bool) -> VisualAffectVec {
    let hsv = hsv_stats(frame);
    VisualAffectVec {
        color_names: color_names(frame),
        glcm_props: glcm_props(frame),
        hsv_stats: hsv,
        pad: pad_from_means(hsv.2, hsv.1),
        skin_ratio: extended.then(|| skin_ratio(frame)),
        level_of_detail: extended.then(|| level_of_detail(frame)),
    }
}
