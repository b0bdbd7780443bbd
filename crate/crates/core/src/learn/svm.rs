//! Soft-margin RBF SVM trained by sequential minimal optimization with
//! maximal-violating-pair working-set selection. Deterministic for a fixed
//! input order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TAU: f64 = 1e-12;

/// Solver settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SvmConfig {
    /// Soft-margin cost.
    pub cost: f64,
    /// RBF width; `None` defaults to 1/dimension.
    pub gamma: Option<f64>,
    /// KKT violation tolerance.
    pub tolerance: f64,
    /// Hard iteration cap.
    pub max_iterations: usize,
    /// Kernel row cache budget in megabytes.
    pub cache_mb: usize,
    /// Reserved for future stochastic selection; the solver itself is
    /// deterministic and does not consume randomness.
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            cost: 1.0,
            gamma: None,
            tolerance: 1e-3,
            max_iterations: 10_000_000,
            cache_mb: 256,
            seed: 0,
        }
    }
}

/// Trained kernel expansion: decision(x) = sum_i coef_i K(sv_i, x) + bias.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub support_vectors: Vec<Vec<f64>>,
    /// alpha_i * y_i per support vector; bounded by the cost in magnitude.
    pub dual_coefs: Vec<f64>,
    pub bias: f64,
    pub gamma: f64,
    pub cost: f64,
}

impl SvmModel {
    pub fn decision(&self, x: &[f64]) -> f64 {
        let mut sum = self.bias;
        for (sv, coef) in self.support_vectors.iter().zip(&self.dual_coefs) {
            sum += coef * rbf(self.gamma, sv, x);
        }
        sum
    }
}

#[inline]
pub fn rbf(gamma: f64, a: &[f64], b: &[f64]) -> f64 {
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (-gamma * d2).exp()
}

/// Kernel rows, fully materialized when they fit the cache budget and
/// recomputed FIFO-style otherwise.
struct KernelCache<'a> {
    x: &'a [Vec<f64>],
    gamma: f64,
    rows: Vec<Option<Vec<f64>>>,
    order: std::collections::VecDeque<usize>,
    capacity: usize,
}

impl<'a> KernelCache<'a> {
    fn new(x: &'a [Vec<f64>], gamma: f64, cache_mb: usize) -> Self {
        let n = x.len();
        let bytes_per_row = 8 * n;
        let capacity = ((cache_mb.max(1) * (1 << 20)) / bytes_per_row.max(1)).clamp(2, n);
        KernelCache {
            x,
            gamma,
            rows: vec![None; n],
            order: std::collections::VecDeque::new(),
            capacity,
        }
    }

    /// Materializes row `i`, never evicting `keep` (capacity is at least 2,
    /// so a working pair always fits).
    fn ensure(&mut self, i: usize, keep: usize) {
        if self.rows[i].is_some() {
            return;
        }
        if self.order.len() >= self.capacity {
            if let Some(pos) = self.order.iter().position(|&t| t != keep) {
                let evict = self.order.remove(pos).unwrap();
                self.rows[evict] = None;
            }
        }
        let xi = &self.x[i];
        let row: Vec<f64> = self.x.iter().map(|xj| rbf(self.gamma, xi, xj)).collect();
        self.rows[i] = Some(row);
        self.order.push_back(i);
    }

    fn get(&self, i: usize) -> &[f64] {
        self.rows[i].as_ref().expect("row ensured")
    }
}

/// Solves the dual problem and returns the kernel expansion.
///
/// Labels must be +-1 with both classes present. Ties in working-set
/// selection resolve to the lowest index, so retraining on identical input
/// reproduces the model bit for bit.
pub fn train_svm(x: &[Vec<f64>], y: &[f64], cfg: &SvmConfig) -> Result<SvmModel> {
    if x.is_empty() || x.len() != y.len() {
        return Err(Error::Validation(format!(
            "svm_train: {} samples vs {} labels",
            x.len(),
            y.len()
        )));
    }
    for &label in y {
        if label != 1.0 && label != -1.0 {
            return Err(Error::Validation(format!("svm label {label} not in {{-1,+1}}")));
        }
    }
    if !y.iter().any(|&l| l > 0.0) || !y.iter().any(|&l| l < 0.0) {
        return Err(Error::Validation("svm_train requires both classes".into()));
    }
    let dim = x[0].len();
    if x.iter().any(|row| row.len() != dim) {
        return Err(Error::Validation("svm_train: ragged feature matrix".into()));
    }
    let gamma = cfg.gamma.unwrap_or(1.0 / dim.max(1) as f64);
    let c = cfg.cost;
    let n = x.len();

    let mut cache = KernelCache::new(x, gamma, cfg.cache_mb);
    let mut alpha = vec![0.0f64; n];
    // Gradient of the dual objective; -1 at alpha = 0.
    let mut grad = vec![-1.0f64; n];

    let in_up = |t: usize, alpha: &[f64]| {
        (y[t] > 0.0 && alpha[t] < c) || (y[t] < 0.0 && alpha[t] > 0.0)
    };
    let in_low = |t: usize, alpha: &[f64]| {
        (y[t] < 0.0 && alpha[t] < c) || (y[t] > 0.0 && alpha[t] > 0.0)
    };

    for _iter in 0..cfg.max_iterations {
        // Maximal violating pair.
        let mut i = usize::MAX;
        let mut m_val = f64::NEG_INFINITY;
        let mut j = usize::MAX;
        let mut m_low = f64::INFINITY;
        for t in 0..n {
            let v = -y[t] * grad[t];
            if in_up(t, &alpha) && v > m_val {
                m_val = v;
                i = t;
            }
            if in_low(t, &alpha) && v < m_low {
                m_low = v;
                j = t;
            }
        }
        if i == usize::MAX || j == usize::MAX || m_val - m_low < cfg.tolerance {
            break;
        }

        cache.ensure(i, j);
        cache.ensure(j, i);
        let (kii, kij) = {
            let row_i = cache.get(i);
            (row_i[i], row_i[j])
        };
        let kjj = cache.get(j)[j];
        let mut eta = kii + kjj - 2.0 * kij;
        if eta <= 0.0 {
            eta = TAU;
        }

        let old_ai = alpha[i];
        let old_aj = alpha[j];
        if y[i] != y[j] {
            let delta = (-grad[i] - grad[j]) / eta;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let delta = (grad[i] - grad[j]) / eta;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        let dai = alpha[i] - old_ai;
        let daj = alpha[j] - old_aj;
        if dai == 0.0 && daj == 0.0 {
            break;
        }
        let row_i = cache.get(i);
        let row_j = cache.get(j);
        for t in 0..n {
            grad[t] += y[t] * y[i] * row_i[t] * dai + y[t] * y[j] * row_j[t] * daj;
        }
    }

    // Bias from free support vectors, or the violation midpoint if none.
    let mut free_sum = 0.0;
    let mut free_count = 0usize;
    for t in 0..n {
        if alpha[t] > TAU && alpha[t] < c - TAU {
            free_sum += -y[t] * grad[t];
            free_count += 1;
        }
    }
    let bias = if free_count > 0 {
        free_sum / free_count as f64
    } else {
        let mut hi = f64::NEG_INFINITY;
        let mut lo = f64::INFINITY;
        for t in 0..n {
            let v = -y[t] * grad[t];
            if in_up(t, &alpha) {
                hi = hi.max(v);
            }
            if in_low(t, &alpha) {
                lo = lo.min(v);
            }
        }
        (hi + lo) / 2.0
    };

    let mut support_vectors = Vec::new();
    let mut dual_coefs = Vec::new();
    for t in 0..n {
        if alpha[t] > TAU {
            support_vectors.push(x[t].clone());
            dual_coefs.push(alpha[t] * y[t]);
        }
    }
    Ok(SvmModel {
        support_vectors,
        dual_coefs,
        bias,
        gamma,
        cost: c,
    })
}

/// Sigmoid parameters mapping margins to probabilities:
/// p(m) = 1 / (1 + exp(a*m + b)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlattParams {
    pub a: f64,
    pub b: f64,
}

impl PlattParams {
    pub fn score(&self, margin: f64) -> f64 {
        let t = self.a * margin + self.b;
        // Numerically stable sigmoid.
        if t >= 0.0 {
            (-t).exp() / (1.0 + (-t).exp())
        } else {
            1.0 / (1.0 + t.exp())
        }
    }
}

/// Fits the sigmoid by the regularized maximum-likelihood Newton method.
pub fn fit_platt(margins: &[f64], labels: &[bool]) -> Result<PlattParams> {
    if margins.len() != labels.len() || margins.is_empty() {
        return Err(Error::Validation("platt fit needs aligned nonempty inputs".into()));
    }
    let n_pos = labels.iter().filter(|&&l| l).count() as f64;
    let n_neg = labels.len() as f64 - n_pos;
    let hi_target = (n_pos + 1.0) / (n_pos + 2.0);
    let lo_target = 1.0 / (n_neg + 2.0);
    let targets: Vec<f64> = labels
        .iter()
        .map(|&l| if l { hi_target } else { lo_target })
        .collect();

    let mut a = 0.0f64;
    let mut b = ((n_neg + 1.0) / (n_pos + 1.0)).ln();
    let objective = |a: f64, b: f64| -> f64 {
        margins
            .iter()
            .zip(&targets)
            .map(|(&m, &t)| {
                let f = a * m + b;
                if f >= 0.0 {
                    t * f + (1.0 + (-f).exp()).ln()
                } else {
                    (t - 1.0) * f + (1.0 + f.exp()).ln()
                }
            })
            .sum()
    };

    let mut fval = objective(a, b);
    for _ in 0..100 {
        // Gradient and Hessian of the negative log-likelihood.
        let (mut h11, mut h22, mut h21) = (1e-12, 1e-12, 0.0);
        let (mut g1, mut g2) = (0.0, 0.0);
        for (&m, &t) in margins.iter().zip(&targets) {
            let f = a * m + b;
            let (p, q) = if f >= 0.0 {
                let e = (-f).exp();
                (e / (1.0 + e), 1.0 / (1.0 + e))
            } else {
                let e = f.exp();
                (1.0 / (1.0 + e), e / (1.0 + e))
            };
            let d2 = p * q;
            h11 += m * m * d2;
            h22 += d2;
            h21 += m * d2;
            let d1 = t - p;
            g1 += m * d1;
            g2 += d1;
        }
        if g1.abs() < 1e-5 && g2.abs() < 1e-5 {
            break;
        }
        let det = h11 * h22 - h21 * h21;
        let da = -(h22 * g1 - h21 * g2) / det;
        let db = -(-h21 * g1 + h11 * g2) / det;
        let gd = g1 * da + g2 * db;

        let mut step = 1.0;
        loop {
            let na = a + step * da;
            let nb = b + step * db;
            let nf = objective(na, nb);
            if nf < fval + 1e-4 * step * gd {
                a = na;
                b = nb;
                fval = nf;
                break;
            }
            step /= 2.0;
            if step < 1e-10 {
                return Ok(PlattParams { a, b });
            }
        }
    }
    Ok(PlattParams { a, b })
}
