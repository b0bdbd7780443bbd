//! Seeded k-means++ with Lloyd refinement. Fully deterministic for a fixed
//! seed and input order.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

const CONVERGENCE_EPS: f64 = 1e-6;
const MAX_ITERATIONS: usize = 300;

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Lloyd's algorithm from a k-means++ initialization. Returns centroids in
/// canonical (lexicographic) order.
pub(crate) fn kmeans(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    assert!(points.len() >= k && k >= 1);
    let mut centroids = plus_plus_init(points, k, rng);

    for _ in 0..MAX_ITERATIONS {
        let assignments: Vec<usize> = points
            .iter()
            .map(|p| nearest(p, &centroids).0)
            .collect();

        let dim = points[0].len();
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &c) in points.iter().zip(&assignments) {
            counts[c] += 1;
            for (s, v) in sums[c].iter_mut().zip(p) {
                *s += v;
            }
        }

        let mut next: Vec<Vec<f64>> = Vec::with_capacity(k);
        for c in 0..k {
            if counts[c] == 0 {
                // Relocate an empty cluster to the point farthest from its
                // current centroid; lowest index wins ties.
                let far = points
                    .iter()
                    .enumerate()
                    .max_by(|(i, p), (j, q)| {
                        let dp = squared_distance(p, &centroids[assignments[*i]]);
                        let dq = squared_distance(q, &centroids[assignments[*j]]);
                        dp.total_cmp(&dq).then(j.cmp(i))
                    })
                    .map(|(_, p)| p.clone())
                    .unwrap();
                next.push(far);
            } else {
                next.push(sums[c].iter().map(|s| s / counts[c] as f64).collect());
            }
        }

        let shift = centroids
            .iter()
            .zip(&next)
            .map(|(a, b)| squared_distance(a, b).sqrt())
            .fold(0.0f64, f64::max);
        centroids = next;
        if shift < CONVERGENCE_EPS {
            break;
        }
    }

    centroids.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    centroids
}

fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, c) in centroids.iter().enumerate() {
        let d = squared_distance(point, c);
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

/// k-means++ seeding: first center uniform, the rest sampled proportional
/// to squared distance from the chosen set.
fn plus_plus_init(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut centroids = vec![points[rng.gen_range(0..points.len())].clone()];
    let mut d2: Vec<f64> = points
        .iter()
        .map(|p| squared_distance(p, &centroids[0]))
        .collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let idx = if total <= 0.0 {
            // All remaining mass is on already-chosen positions.
            rng.gen_range(0..points.len())
        } else {
            let mut target = rng.gen::<f64>() * total;
            let mut chosen = points.len() - 1;
            for (i, &w) in d2.iter().enumerate() {
                if target < w {
                    chosen = i;
                    break;
                }
                target -= w;
            }
            chosen
        };
        let center = points[idx].clone();
        for (d, p) in d2.iter_mut().zip(points) {
            let nd = squared_distance(p, &center);
            if nd < *d {
                *d = nd;
            }
        }
        centroids.push(center);
    }
    centroids
}
