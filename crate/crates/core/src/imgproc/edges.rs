//! Sobel gradients and the 80-dimensional oriented edge histogram.

use super::frame::GrayImage;

/// Fraction of the maximum gradient magnitude below which a pixel is not an
/// edge.
pub const EDGE_MAGNITUDE_FRACTION: f64 = 0.2;

/// Minimum 2x2 filter response for a block to vote in the edge histogram.
pub const EDGE_VOTE_THRESHOLD: f64 = 0.05;

/// Orientation bins of the edge histogram, in storage order.
pub const EDGE_ORIENTATIONS: usize = 5;

/// Sobel x/y gradients with replicated borders.
pub fn sobel_gradients(img: &GrayImage) -> (GrayImage, GrayImage) {
    let w = img.width();
    let h = img.height();
    let mut gx = GrayImage::filled(w, h, 0.0);
    let mut gy = GrayImage::filled(w, h, 0.0);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let p = |dx: isize, dy: isize| img.get_clamped(x + dx, y + dy);
            let sx = (p(1, -1) + 2.0 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2.0 * p(-1, 0) + p(-1, 1));
            let sy = (p(-1, 1) + 2.0 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2.0 * p(0, -1) + p(1, -1));
            gx.set(x as usize, y as usize, sx);
            gy.set(x as usize, y as usize, sy);
        }
    }
    (gx, gy)
}

/// Gradient magnitude sqrt(gx^2 + gy^2).
pub fn sobel_magnitude(img: &GrayImage) -> GrayImage {
    let (gx, gy) = sobel_gradients(img);
    let data = gx
        .data()
        .iter()
        .zip(gy.data())
        .map(|(x, y)| (x * x + y * y).sqrt())
        .collect();
    GrayImage::from_raw(img.width(), img.height(), data)
}

/// Oriented edge histogram over a 4x4 cell grid.
///
/// Each cell is scanned in non-overlapping 2x2 blocks; the block votes for
/// the orientation filter (vertical, horizontal, 45 deg, 135 deg,
/// non-directional) with the strongest absolute response, provided that
/// response exceeds [`EDGE_VOTE_THRESHOLD`]. Votes are normalized by the
/// cell's block count, so every entry lies in `[0, 1]`. Layout is cell-major:
/// `out[cell * 5 + orientation]` with cells in row-major order.
pub fn edge_histogram(img: &GrayImage) -> Vec<f64> {
    const GRID: usize = 4;
    let w = img.width();
    let h = img.height();
    let mut out = vec![0.0; GRID * GRID * EDGE_ORIENTATIONS];
    let sqrt2 = std::f64::consts::SQRT_2;

    for cy in 0..GRID {
        for cx in 0..GRID {
            let x0 = cx * w / GRID;
            let x1 = (cx + 1) * w / GRID;
            let y0 = cy * h / GRID;
            let y1 = (cy + 1) * h / GRID;
            let mut blocks = 0usize;
            let mut votes = [0.0f64; EDGE_ORIENTATIONS];
            let mut by = y0;
            while by + 2 <= y1 {
                let mut bx = x0;
                while bx + 2 <= x1 {
                    let a = img.get(bx, by);
                    let b = img.get(bx + 1, by);
                    let c = img.get(bx, by + 1);
                    let d = img.get(bx + 1, by + 1);
                    let responses = [
                        a - b + c - d,                  // vertical edge
                        a + b - c - d,                  // horizontal edge
                        sqrt2 * (a - d),                // 45 degrees
                        sqrt2 * (b - c),                // 135 degrees
                        2.0 * (a - b - c + d),          // non-directional
                    ];
                    let (best, mag) = responses
                        .iter()
                        .map(|r| r.abs())
                        .enumerate()
                        .max_by(|(_, r1), (_, r2)| r1.total_cmp(r2))
                        .unwrap();
                    if mag > EDGE_VOTE_THRESHOLD {
                        votes[best] += 1.0;
                    }
                    blocks += 1;
                    bx += 2;
                }
                by += 2;
            }
            let cell = cy * GRID + cx;
            if blocks > 0 {
                for (slot, v) in out
                    [cell * EDGE_ORIENTATIONS..(cell + 1) * EDGE_ORIENTATIONS]
                    .iter_mut()
                    .zip(votes)
                {
                    *slot = v / blocks as f64;
                }
            }
        }
    }
    out
}
