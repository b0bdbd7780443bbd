//! Angular line-evidence histograms from a gradient-directed Hough transform.

use super::edges::{sobel_gradients, EDGE_MAGNITUDE_FRACTION};
use super::frame::GrayImage;

/// Number of orientation bins over [0, 180) degrees.
pub const ANGLE_BINS: usize = 36;

const DEGREES_PER_BIN: f64 = 180.0 / ANGLE_BINS as f64;

/// Accumulated line evidence per normal angle; bin k covers
/// `[5k, 5k+5)` degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularHistogram {
    bins: [f64; ANGLE_BINS],
}

impl AngularHistogram {
    pub fn zero() -> Self {
        AngularHistogram {
            bins: [0.0; ANGLE_BINS],
        }
    }

    pub fn bins(&self) -> &[f64; ANGLE_BINS] {
        &self.bins
    }

    pub fn total(&self) -> f64 {
        self.bins.iter().sum()
    }

    /// Peak share of the histogram mass; 0 for a blank block.
    pub fn directionality(&self) -> f64 {
        let total = self.total();
        if total <= 0.0 {
            return 0.0;
        }
        self.bins.iter().cloned().fold(f64::MIN, f64::max) / total
    }
}

/// Angular histogram of a block (or whole image).
///
/// Edge pixels are those whose Sobel magnitude exceeds
/// [`EDGE_MAGNITUDE_FRACTION`] of the block maximum. Each edge pixel votes
/// in the (rho, theta) accumulator at its gradient normal angle; the
/// accumulator is then collapsed over rho into the 36 theta bins. A blank
/// block yields the zero histogram.
pub fn hough_angles(img: &GrayImage) -> AngularHistogram {
    let (gx, gy) = sobel_gradients(img);
    let mags: Vec<f64> = gx
        .data()
        .iter()
        .zip(gy.data())
        .map(|(x, y)| (x * x + y * y).sqrt())
        .collect();
    let max_mag = mags.iter().cloned().fold(0.0f64, f64::max);
    if max_mag <= 0.0 {
        return AngularHistogram::zero();
    }
    let threshold = EDGE_MAGNITUDE_FRACTION * max_mag;

    let w = img.width();
    let h = img.height();
    let diag = ((w * w + h * h) as f64).sqrt().ceil() as i64;
    let rho_bins = (2 * diag + 1) as usize;
    let mut acc = vec![0.0f64; rho_bins * ANGLE_BINS];

    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            if mags[i] <= threshold {
                continue;
            }
            let angle = gy.data()[i].atan2(gx.data()[i]).to_degrees().rem_euclid(180.0);
            let bin = ((angle / DEGREES_PER_BIN) as usize).min(ANGLE_BINS - 1);
            let theta = (bin as f64 + 0.5) * DEGREES_PER_BIN.to_radians();
            let rho = x as f64 * theta.cos() + y as f64 * theta.sin();
            let rho_idx = (rho.round() as i64 + diag).clamp(0, rho_bins as i64 - 1) as usize;
            acc[rho_idx * ANGLE_BINS + bin] += 1.0;
        }
    }

    let mut bins = [0.0; ANGLE_BINS];
    for row in acc.chunks_exact(ANGLE_BINS) {
        for (b, v) in bins.iter_mut().zip(row) {
            *b += v;
        }
    }
    AngularHistogram { bins }
}
