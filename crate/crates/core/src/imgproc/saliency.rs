//! Spectral-residual saliency maps.
//!
//! The map highlights the statistically unexpected part of an image's
//! log-amplitude spectrum: a 3x3 box average models the smooth spectral
//! prior, the residual above it is transformed back to image space with the
//! original phase, and the squared magnitude is smoothed and normalized to a
//! unit-sum 64x64 grid.

use rustfft::num_complex::Complex;

use crate::fft::{fft2d, to_complex};
use super::frame::{gray_analysis, Frame, GrayImage, ANALYSIS_SIZE};

const LOG_EPS: f64 = 1e-12;

/// Unit-sum 64x64 saliency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SaliencyMap {
    data: Vec<f64>,
}

impl SaliencyMap {
    pub const SIZE: usize = ANALYSIS_SIZE;

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * Self::SIZE + x]
    }

    fn uniform() -> Self {
        let n = Self::SIZE * Self::SIZE;
        SaliencyMap {
            data: vec![1.0 / n as f64; n],
        }
    }
}

/// Saliency map of one RGB frame via its 64x64 luminance plane.
pub fn spectral_residual_saliency(frame: &Frame) -> SaliencyMap {
    saliency_of_grid(&gray_analysis(frame))
}

/// Saliency of an arbitrary real-valued 64x64 grid (luminance or opponent
/// channels). A constant grid carries no residual and maps to the uniform
/// distribution.
pub fn saliency_of_grid(grid: &GrayImage) -> SaliencyMap {
    assert_eq!(grid.width(), ANALYSIS_SIZE);
    assert_eq!(grid.height(), ANALYSIS_SIZE);
    if is_constant(grid.data()) {
        return SaliencyMap::uniform();
    }

    let spectrum = residual_spectrum(grid.data());

    let mut buf = spectrum;
    fft2d(&mut buf, ANALYSIS_SIZE, ANALYSIS_SIZE, true);
    let energy: Vec<f64> = buf.iter().map(|c| c.norm_sqr()).collect();

    let smoothed = gaussian3(&energy, ANALYSIS_SIZE);
    let total: f64 = smoothed.iter().sum();
    if total <= 0.0 || !total.is_finite() {
        return SaliencyMap::uniform();
    }
    SaliencyMap {
        data: smoothed.iter().map(|v| v / total).collect(),
    }
}

/// Residual spectrum e^R * e^{i phase}: the frequency-domain signature the
/// saliency map and the scene-content descriptor both start from.
pub(crate) fn residual_spectrum(values: &[f64]) -> Vec<Complex<f64>> {
    let n = ANALYSIS_SIZE;
    let mut freq = to_complex(values);
    fft2d(&mut freq, n, n, false);

    let log_amp: Vec<f64> = freq.iter().map(|c| (LOG_EPS + c.norm()).ln()).collect();
    let local = box3_wrap(&log_amp, n);

    freq.iter()
        .zip(log_amp.iter().zip(&local))
        .map(|(c, (&l, &avg))| {
            let residual = l - avg;
            Complex::from_polar(residual.exp(), c.arg())
        })
        .collect()
}

fn is_constant(values: &[f64]) -> bool {
    let first = values[0];
    values.iter().all(|&v| (v - first).abs() < 1e-12)
}

/// 3x3 box average with periodic wrap; the spectrum grid is a torus.
fn box3_wrap(values: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; values.len()];
    for y in 0..n {
        for x in 0..n {
            let mut sum = 0.0;
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let sx = (x as i64 + dx).rem_euclid(n as i64) as usize;
                    let sy = (y as i64 + dy).rem_euclid(n as i64) as usize;
                    sum += values[sy * n + sx];
                }
            }
            out[y * n + x] = sum / 9.0;
        }
    }
    out
}

/// 3x3 Gaussian (sigma = 1) with replicated borders.
fn gaussian3(values: &[f64], n: usize) -> Vec<f64> {
    let w_edge = (-0.5f64).exp();
    let w_corner = (-1.0f64).exp();
    let norm = 1.0 + 4.0 * w_edge + 4.0 * w_corner;
    let weight = |dx: i64, dy: i64| match dx.abs() + dy.abs() {
        0 => 1.0,
        1 => w_edge,
        _ => w_corner,
    };
    let mut out = vec![0.0; values.len()];
    for y in 0..n {
        for x in 0..n {
            let mut sum = 0.0;
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let sx = (x as i64 + dx).clamp(0, n as i64 - 1) as usize;
                    let sy = (y as i64 + dy).clamp(0, n as i64 - 1) as usize;
                    sum += weight(dx, dy) * values[sy * n + sx];
                }
            }
            out[y * n + x] = sum / norm;
        }
    }
    out
}
