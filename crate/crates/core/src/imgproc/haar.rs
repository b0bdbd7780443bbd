//! Orthonormal Haar wavelet pyramid.

use super::frame::GrayImage;

/// Detail bands of one decomposition level. `h` holds differences along x,
/// `v` along y, `d` the diagonal band.
#[derive(Debug, Clone)]
pub struct HaarLevel {
    pub h: GrayImage,
    pub v: GrayImage,
    pub d: GrayImage,
}

impl HaarLevel {
    /// Sum of squared detail coefficients at this level.
    pub fn detail_energy(&self) -> f64 {
        [&self.h, &self.v, &self.d]
            .iter()
            .map(|g| g.data().iter().map(|v| v * v).sum::<f64>())
            .sum()
    }
}

/// Multi-level Haar decomposition. `levels[0]` is the finest scale; `approx`
/// is the remaining low-pass band.
#[derive(Debug, Clone)]
pub struct HaarPyramid {
    pub levels: Vec<HaarLevel>,
    pub approx: GrayImage,
}

impl HaarPyramid {
    /// Total energy over all detail bands and the approximation. Equals the
    /// input energy (on the padded buffer) for the orthonormal transform.
    pub fn total_energy(&self) -> f64 {
        let details: f64 = self.levels.iter().map(HaarLevel::detail_energy).sum();
        details + self.approx.data().iter().map(|v| v * v).sum::<f64>()
    }
}

fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}

/// Pad by edge replication to power-of-two dimensions.
fn pad_to_pow2(img: &GrayImage) -> GrayImage {
    let w = next_pow2(img.width());
    let h = next_pow2(img.height());
    if w == img.width() && h == img.height() {
        return img.clone();
    }
    let mut out = GrayImage::filled(w, h, 0.0);
    for y in 0..h {
        let sy = y.min(img.height() - 1);
        for x in 0..w {
            let sx = x.min(img.width() - 1);
            out.set(x, y, img.get(sx, sy));
        }
    }
    out
}

fn analyze_once(input: &GrayImage) -> (GrayImage, HaarLevel) {
    let w = input.width() / 2;
    let h = input.height() / 2;
    let mut ll = GrayImage::filled(w, h, 0.0);
    let mut hd = GrayImage::filled(w, h, 0.0);
    let mut vd = GrayImage::filled(w, h, 0.0);
    let mut dd = GrayImage::filled(w, h, 0.0);
    for y in 0..h {
        for x in 0..w {
            let a = input.get(2 * x, 2 * y);
            let b = input.get(2 * x + 1, 2 * y);
            let c = input.get(2 * x, 2 * y + 1);
            let d = input.get(2 * x + 1, 2 * y + 1);
            ll.set(x, y, (a + b + c + d) / 2.0);
            hd.set(x, y, (a - b + c - d) / 2.0);
            vd.set(x, y, (a + b - c - d) / 2.0);
            dd.set(x, y, (a - b - c + d) / 2.0);
        }
    }
    (ll, HaarLevel { h: hd, v: vd, d: dd })
}

/// Haar analysis after padding to power-of-two size. Requests for more
/// levels than the padded size supports stop at a 1x1 approximation.
pub fn haar_pyramid(img: &GrayImage, levels: usize) -> HaarPyramid {
    let mut current = pad_to_pow2(img);
    let mut out = Vec::with_capacity(levels);
    for _ in 0..levels {
        if current.width() < 2 || current.height() < 2 {
            break;
        }
        let (ll, level) = analyze_once(&current);
        out.push(level);
        current = ll;
    }
    HaarPyramid {
        levels: out,
        approx: current,
    }
}
