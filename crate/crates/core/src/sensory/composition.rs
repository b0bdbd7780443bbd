//! Composition and photographic technique features (17 dimensions).

use crate::imgproc::{
    edge_histogram, gray_analysis, haar_pyramid, log_amplitude_spectrum, spectrum_distance,
    to_gray, Frame, GrayImage,
};

/// The 17-dimensional composition vector: rule-of-thirds HSV (3), low depth
/// of field (9), contrast, symmetry, uniqueness, and image order (2).
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionVec {
    pub rot_h: f64,
    pub rot_s: f64,
    pub rot_v: f64,
    pub low_dof: [f64; 9],
    pub contrast: f64,
    pub symmetry: f64,
    pub uniqueness: f64,
    pub order_entropy: f64,
    pub order_complexity: f64,
}

impl CompositionVec {
    pub const DIM: usize = 17;

    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = vec![self.rot_h, self.rot_s, self.rot_v];
        v.extend_from_slice(&self.low_dof);
        v.extend_from_slice(&[
            self.contrast,
            self.symmetry,
            self.uniqueness,
            self.order_entropy,
            self.order_complexity,
        ]);
        v
    }
}

/// Mean HSV over a pixel rectangle; hue is averaged circularly and reported
/// as angle/360.
pub(crate) fn hsv_mean_region(
    frame: &Frame,
    x0: usize,
    y0: usize,
    x1: usize,
    y1: usize,
) -> (f64, f64, f64) {
    let mut cos_sum = 0.0;
    let mut sin_sum = 0.0;
    let mut s_sum = 0.0;
    let mut v_sum = 0.0;
    let n = ((x1 - x0) * (y1 - y0)) as f64;
    for y in y0..y1 {
        for x in x0..x1 {
            let (h, s, v) = crate::imgproc::rgb_to_hsv(frame.rgb(x, y));
            let rad = h.to_radians();
            cos_sum += rad.cos();
            sin_sum += rad.sin();
            s_sum += s;
            v_sum += v;
        }
    }
    let mean_angle = sin_sum.atan2(cos_sum).to_degrees().rem_euclid(360.0);
    // atan2(0, 0) is 0, which doubles as the achromatic convention.
    let h = if cos_sum == 0.0 && sin_sum == 0.0 {
        0.0
    } else {
        mean_angle / 360.0
    };
    (h, s_sum / n, v_sum / n)
}

/// Mean HSV of the central-third rectangle.
pub fn rule_of_thirds(frame: &Frame) -> (f64, f64, f64) {
    let w = frame.width();
    let h = frame.height();
    hsv_mean_region(frame, w / 3, h / 3, 2 * w / 3, 2 * h / 3)
}

/// Low depth-of-field indicators: per HSV channel and Haar level, the share
/// of detail energy falling in the central 2x2 blocks of a 4x4 tiling.
/// Order is channel-major (H levels 1-3, then S, then V); 0/0 maps to 0.
pub fn low_dof(frame: &Frame) -> [f64; 9] {
    let mut out = [0.0; 9];
    for (c, plane) in hsv_planes(frame).iter().enumerate() {
        let pyr = haar_pyramid(plane, 3);
        for (l, level) in pyr.levels.iter().enumerate() {
            let mut center = 0.0;
            let mut total = 0.0;
            for band in [&level.h, &level.v, &level.d] {
                let w = band.width();
                let h = band.height();
                for y in 0..h {
                    for x in 0..w {
                        let e = band.get(x, y) * band.get(x, y);
                        total += e;
                        if x >= w / 4 && x < 3 * w / 4 && y >= h / 4 && y < 3 * h / 4 {
                            center += e;
                        }
                    }
                }
            }
            out[c * 3 + l] = if total > 0.0 { center / total } else { 0.0 };
        }
    }
    out
}

fn hsv_planes(frame: &Frame) -> [GrayImage; 3] {
    let w = frame.width();
    let h = frame.height();
    let mut hp = GrayImage::filled(w, h, 0.0);
    let mut sp = GrayImage::filled(w, h, 0.0);
    let mut vp = GrayImage::filled(w, h, 0.0);
    for y in 0..h {
        for x in 0..w {
            let (hh, ss, vv) = crate::imgproc::rgb_to_hsv(frame.rgb(x, y));
            hp.set(x, y, hh / 360.0);
            sp.set(x, y, ss);
            vp.set(x, y, vv);
        }
    }
    [hp, sp, vp]
}

/// Michelson contrast with percentile clipping: (Y99 - Y1)/(Y99 + Y1 + eps)
/// over the 1st and 99th luminance percentiles.
pub fn michelson_contrast(frame: &Frame) -> f64 {
    let gray = to_gray(frame);
    let mut values: Vec<f64> = gray.data().to_vec();
    values.sort_by(f64::total_cmp);
    let n = values.len();
    let rank = |p: f64| -> f64 {
        let idx = ((p * n as f64).ceil() as usize).clamp(1, n) - 1;
        values[idx]
    };
    let lo = rank(0.01);
    let hi = rank(0.99);
    (hi - lo) / (hi + lo + 1e-6)
}

/// Asymmetry: L1 distance between the edge histogram of the left half and
/// that of the mirrored right half. 0 for mirror-symmetric frames.
pub fn symmetry(frame: &Frame) -> f64 {
    let gray = to_gray(frame);
    let w = gray.width();
    let h = gray.height();
    let left = gray.crop(0, 0, w / 2, h);
    let right = gray.crop(w - w / 2, 0, w, h).flip_horizontal();
    let ha = edge_histogram(&left);
    let hb = edge_histogram(&right);
    ha.iter().zip(&hb).map(|(a, b)| (a - b).abs()).sum()
}

/// Euclidean distance between the frame's log-amplitude spectrum and the
/// background-corpus mean spectrum.
pub fn uniqueness(frame: &Frame, corpus_mean_spectrum: &GrayImage) -> f64 {
    let spec = log_amplitude_spectrum(&gray_analysis(frame));
    spectrum_distance(&spec, corpus_mean_spectrum)
}

/// Image order via entropy and compressibility: both near 1 for highly
/// ordered frames.
pub fn image_order(frame: &Frame) -> (f64, f64) {
    let gray = to_gray(frame);
    let mut hist = [0.0f64; 256];
    for &v in gray.data() {
        let bin = ((v * 256.0) as usize).min(255);
        hist[bin] += 1.0;
    }
    let n = gray.data().len() as f64;
    let mut entropy = 0.0;
    for &count in &hist {
        if count > 0.0 {
            let p = count / n;
            entropy -= p * p.log2();
        }
    }
    let order_entropy = 1.0 - entropy / 8.0;

    let small = gray_analysis(frame);
    let bytes: Vec<u8> = small
        .data()
        .iter()
        .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
        .collect();
    let compressed = miniz_oxide::deflate::compress_to_vec(&bytes, 10);
    let ratio = compressed.len() as f64 / bytes.len() as f64;
    let order_complexity = (1.0 - ratio).clamp(0.0, 1.0);

    (order_entropy, order_complexity)
}

/// All composition features of one frame. The corpus mean spectrum feeds
/// the uniqueness term.
pub fn extract_composition(frame: &Frame, corpus_mean_spectrum: &GrayImage) -> CompositionVec {
    let (rot_h, rot_s, rot_v) = rule_of_thirds(frame);
    let (order_entropy, order_complexity) = image_order(frame);
    CompositionVec {
        rot_h,
        rot_s,
        rot_v,
        low_dof: low_dof(frame),
        contrast: michelson_contrast(frame),
        symmetry: symmetry(frame),
        uniqueness: uniqueness(frame, corpus_mean_spectrum),
        order_entropy,
        order_complexity,
    }
}
