//! Scene content descriptor: 462 dimensions built from the frequency-domain
//! saliency signature.
//!
//! Layout: 18 oriented band-pass responses of the residual spectrum
//! (6 orientations x 3 radial bands), each averaged over a 5x5 spatial grid
//! (450 dims), followed by 4 moments (mean, variance, skewness, kurtosis)
//! of the saliency map on the RG, BY and intensity opponent channels
//! (12 dims).

use rustfft::num_complex::Complex;

use crate::fft::fft2d;
use crate::imgproc::{saliency_of_grid, to_gray, Frame, GrayImage, ANALYSIS_SIZE};

pub const SCENE_CONTENT_DIM: usize = 462;

const ORIENTATIONS: usize = 6;
const BANDS: usize = 3;
const GRID: usize = 5;
/// Radial band edges on the normalized frequency radius (1 = Nyquist).
const BAND_EDGES: [f64; 4] = [0.0, 0.125, 0.30, 0.75];

/// The 462-dimensional scene content descriptor of one frame.
pub fn scene_content(frame: &Frame) -> Vec<f64> {
    let mut out = Vec::with_capacity(SCENE_CONTENT_DIM);
    out.extend(signature_responses(frame));
    out.extend(saliency_moments(frame));
    debug_assert_eq!(out.len(), SCENE_CONTENT_DIM);
    out
}

/// Band-pass responses of the residual spectrum, averaged on a 5x5 grid.
fn signature_responses(frame: &Frame) -> Vec<f64> {
    let n = ANALYSIS_SIZE;
    let gray = to_gray(frame).resize_bilinear(n, n);
    let signature = crate::imgproc::residual_spectrum(gray.data());

    let mut out = Vec::with_capacity(ORIENTATIONS * BANDS * GRID * GRID);
    for orientation in 0..ORIENTATIONS {
        for band in 0..BANDS {
            let mut masked: Vec<Complex<f64>> = vec![Complex::default(); n * n];
            for y in 0..n {
                let fy = signed_freq(y, n);
                for x in 0..n {
                    let fx = signed_freq(x, n);
                    if in_band(fx, fy, orientation, band) {
                        masked[y * n + x] = signature[y * n + x];
                    }
                }
            }
            fft2d(&mut masked, n, n, true);
            out.extend(grid_means(&masked, n));
        }
    }
    out
}

#[inline]
fn signed_freq(idx: usize, n: usize) -> f64 {
    if idx <= n / 2 {
        idx as f64
    } else {
        idx as f64 - n as f64
    }
}

fn in_band(fx: f64, fy: f64, orientation: usize, band: usize) -> bool {
    let half = (ANALYSIS_SIZE / 2) as f64;
    let r = (fx * fx + fy * fy).sqrt() / half;
    if r <= BAND_EDGES[band] || r > BAND_EDGES[band + 1] {
        return false;
    }
    let angle = fy.atan2(fx).to_degrees().rem_euclid(180.0);
    let center = orientation as f64 * 30.0;
    let mut diff = (angle - center).abs();
    if diff > 90.0 {
        diff = 180.0 - diff;
    }
    diff < 15.0
}

/// Mean response magnitude per cell of a 5x5 grid.
fn grid_means(responses: &[Complex<f64>], n: usize) -> Vec<f64> {
    let mut sums = [0.0; GRID * GRID];
    let mut counts = [0usize; GRID * GRID];
    for y in 0..n {
        let cy = (y * GRID / n).min(GRID - 1);
        for x in 0..n {
            let cx = (x * GRID / n).min(GRID - 1);
            sums[cy * GRID + cx] += responses[y * n + x].norm();
            counts[cy * GRID + cx] += 1;
        }
    }
    sums.iter()
        .zip(&counts)
        .map(|(s, &c)| s / c as f64)
        .collect()
}

/// Moments of the saliency map over RG, BY and intensity channels.
fn saliency_moments(frame: &Frame) -> Vec<f64> {
    let n = ANALYSIS_SIZE;
    let mut out = Vec::with_capacity(12);
    for channel in opponent_channels(frame) {
        let map = saliency_of_grid(&channel.resize_bilinear(n, n));
        out.extend(moments(map.data()));
    }
    out
}

fn opponent_channels(frame: &Frame) -> [GrayImage; 3] {
    let w = frame.width();
    let h = frame.height();
    let mut rg = GrayImage::filled(w, h, 0.0);
    let mut by = GrayImage::filled(w, h, 0.0);
    let mut intensity = GrayImage::filled(w, h, 0.0);
    for y in 0..h {
        for x in 0..w {
            let [r, g, b] = frame.rgb(x, y);
            rg.set(x, y, r - g);
            by.set(x, y, b - (r + g) / 2.0);
            intensity.set(x, y, (r + g + b) / 3.0);
        }
    }
    [rg, by, intensity]
}

fn moments(values: &[f64]) -> [f64; 4] {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    let mut m4 = 0.0;
    for &v in values {
        let d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    let skew = if m2 > 1e-300 { m3 / m2.powf(1.5) } else { 0.0 };
    let kurt = if m2 > 1e-300 { m4 / (m2 * m2) } else { 0.0 };
    [mean, m2, skew, kurt]
}
