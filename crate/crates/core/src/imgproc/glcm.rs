//! Gray-level co-occurrence matrices and their Haralick statistics.

use super::frame::GrayImage;

/// Number of quantized gray levels.
pub const GLCM_LEVELS: usize = 32;

/// Symmetric, normalized 32x32 co-occurrence matrix for one pixel offset.
#[derive(Debug, Clone, PartialEq)]
pub struct GlcMatrix {
    p: Vec<f64>,
}

/// The five co-occurrence statistics used by the texture features.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlcmStats {
    pub contrast: f64,
    pub dissimilarity: f64,
    pub energy: f64,
    pub homogeneity: f64,
    pub entropy: f64,
}

impl GlcMatrix {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * GLCM_LEVELS + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    /// Haralick statistics; entropy uses natural log with 0*log(0) = 0.
    pub fn stats(&self) -> GlcmStats {
        let mut contrast = 0.0;
        let mut dissimilarity = 0.0;
        let mut energy = 0.0;
        let mut homogeneity = 0.0;
        let mut entropy = 0.0;
        for i in 0..GLCM_LEVELS {
            for j in 0..GLCM_LEVELS {
                let p = self.get(i, j);
                let d = i as f64 - j as f64;
                contrast += d * d * p;
                dissimilarity += d.abs() * p;
                energy += p * p;
                homogeneity += p / (1.0 + d * d);
                if p > 0.0 {
                    entropy -= p * p.ln();
                }
            }
        }
        GlcmStats {
            contrast,
            dissimilarity,
            energy,
            homogeneity,
            entropy,
        }
    }
}

#[inline]
pub fn quantize_level(v: f64) -> usize {
    ((v.clamp(0.0, 1.0) * GLCM_LEVELS as f64) as usize).min(GLCM_LEVELS - 1)
}

/// Co-occurrence of quantized gray levels at the given `(dx, dy)` offset,
/// accumulated symmetrically and normalized to unit mass.
pub fn glcm(img: &GrayImage, offset: (i32, i32)) -> GlcMatrix {
    let (dx, dy) = offset;
    let w = img.width() as i32;
    let h = img.height() as i32;
    let mut counts = vec![0.0f64; GLCM_LEVELS * GLCM_LEVELS];
    let mut total = 0.0;
    for y in 0..h {
        let ny = y + dy;
        if ny < 0 || ny >= h {
            continue;
        }
        for x in 0..w {
            let nx = x + dx;
            if nx < 0 || nx >= w {
                continue;
            }
            let a = quantize_level(img.get(x as usize, y as usize));
            let b = quantize_level(img.get(nx as usize, ny as usize));
            counts[a * GLCM_LEVELS + b] += 1.0;
            counts[b * GLCM_LEVELS + a] += 1.0;
            total += 2.0;
        }
    }
    if total > 0.0 {
        for c in counts.iter_mut() {
            *c /= total;
        }
    }
    GlcMatrix { p: counts }
}
