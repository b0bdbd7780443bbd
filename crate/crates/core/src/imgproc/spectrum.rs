//! Log-amplitude spectra on the 64x64 analysis grid.

use crate::fft::{fft2d, to_complex};
use super::frame::{GrayImage, ANALYSIS_SIZE};

/// log(1 + |FFT|) of a 64x64 grid, DC-centered.
pub fn log_amplitude_spectrum(img: &GrayImage) -> GrayImage {
    assert_eq!(img.width(), ANALYSIS_SIZE);
    assert_eq!(img.height(), ANALYSIS_SIZE);
    let n = ANALYSIS_SIZE;
    let mut buf = to_complex(img.data());
    fft2d(&mut buf, n, n, false);

    let mut out = vec![0.0; n * n];
    let half = n / 2;
    for y in 0..n {
        for x in 0..n {
            // fftshift: move DC to the grid center.
            let cx = (x + half) % n;
            let cy = (y + half) % n;
            out[cy * n + cx] = (1.0 + buf[y * n + x].norm()).ln();
        }
    }
    GrayImage::from_raw(n, n, out)
}

/// Euclidean distance between two spectra (or any equally sized grids).
pub fn spectrum_distance(a: &GrayImage, b: &GrayImage) -> f64 {
    assert_eq!(a.data().len(), b.data().len());
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
