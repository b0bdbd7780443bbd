//! Correlation analyses: per-feature Pearson ranking and per-group multiple
//! correlation against the label vector, plus report serialization.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureGroup;

/// Ridge added to the normal equations for rank-deficient designs.
const RIDGE: f64 = 1e-6;

/// Sample Pearson correlation; zero variance on either side maps to 0.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: y.len(),
            context: "pearson operands".into(),
        });
    }
    if x.len() < 2 {
        return Err(Error::Validation("pearson needs at least 2 samples".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if vx <= 0.0 || vy <= 0.0 {
        return Ok(0.0);
    }
    Ok(cov / (vx * vy).sqrt())
}

/// Multiple correlation coefficient: |pearson| between the target and its
/// ridge-stabilized least-squares reconstruction (with intercept).
pub fn mpc(rows: &[Vec<f64>], y: &[f64]) -> Result<f64> {
    if rows.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: rows.len(),
            actual: y.len(),
            context: "mpc rows vs targets".into(),
        });
    }
    if rows.len() < 2 {
        return Err(Error::Validation("mpc needs at least 2 samples".into()));
    }
    let my = y.iter().sum::<f64>() / y.len() as f64;
    if y.iter().all(|v| (v - my).abs() < 1e-15) {
        return Err(Error::Validation("mpc target has zero variance".into()));
    }
    let d = rows[0].len();
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::Validation("mpc rows are ragged".into()));
    }
    let n = rows.len();

    // Standardize columns first; the multiple correlation is invariant
    // under per-column affine maps and the ridge needs a uniform scale.
    let mut mean = vec![0.0; d];
    for row in rows.iter() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v / n as f64;
        }
    }
    let mut sd = vec![0.0; d];
    for row in rows.iter() {
        for ((s, v), m) in sd.iter_mut().zip(row).zip(&mean) {
            *s += (v - m) * (v - m) / n as f64;
        }
    }
    for s in sd.iter_mut() {
        *s = if s.sqrt() > 1e-12 { s.sqrt() } else { 1.0 };
    }

    // Design matrix with intercept column.
    let mut a = DMatrix::zeros(n, d + 1);
    for (i, row) in rows.iter().enumerate() {
        a[(i, 0)] = 1.0;
        for (j, &v) in row.iter().enumerate() {
            a[(i, j + 1)] = (v - mean[j]) / sd[j];
        }
    }
    let yv = DVector::from_row_slice(y);
    let mut normal = a.transpose() * &a;
    for i in 0..d + 1 {
        normal[(i, i)] += RIDGE;
    }
    let rhs = a.transpose() * &yv;
    let w = normal
        .cholesky()
        .map(|ch| ch.solve(&rhs))
        .ok_or_else(|| Error::Validation("mpc normal equations not SPD".into()))?;
    let fitted = a * w;
    Ok(pearson(fitted.as_slice(), y)?.abs())
}

/// One group's feature matrix, rows aligned with the label vector.
#[derive(Debug, Clone)]
pub struct GroupMatrix {
    pub group: FeatureGroup,
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Correlation analysis output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub dataset_tag: String,
    /// Group -> MPC, in group order.
    pub group_mpc: Vec<(FeatureGroup, f64)>,
    /// (feature name, rho), sorted by |rho| descending.
    pub features: Vec<(String, f64)>,
    /// Groups excluded from the per-feature list.
    pub excluded: Vec<FeatureGroup>,
}

/// Computes per-group MPC for every supplied group and a per-feature
/// Pearson ranking for the non-excluded ones.
pub fn rank_features(
    groups: &[GroupMatrix],
    labels: &[f64],
    excluded_from_features: &[FeatureGroup],
    dataset_tag: &str,
) -> Result<CorrelationReport> {
    let mut group_mpc = Vec::with_capacity(groups.len());
    let mut features = Vec::new();
    for gm in groups {
        group_mpc.push((gm.group, mpc(&gm.rows, labels)?));
        if excluded_from_features.contains(&gm.group) {
            continue;
        }
        if gm.feature_names.len() != gm.rows[0].len() {
            return Err(Error::DimensionMismatch {
                expected: gm.rows[0].len(),
                actual: gm.feature_names.len(),
                context: format!("{} feature names", gm.group.name()),
            });
        }
        for (j, name) in gm.feature_names.iter().enumerate() {
            let column: Vec<f64> = gm.rows.iter().map(|r| r[j]).collect();
            let rho = pearson(&column, labels)?;
            features.push((format!("{}/{}", gm.group.name(), name), rho));
        }
    }
    features.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()).then(a.0.cmp(&b.0)));
    Ok(CorrelationReport {
        dataset_tag: dataset_tag.to_string(),
        group_mpc,
        features,
        excluded: excluded_from_features.to_vec(),
    })
}

impl CorrelationReport {
    fn header_comment(&self) -> String {
        let excluded: Vec<&str> = self.excluded.iter().map(|g| g.name()).collect();
        format!(
            "# dataset: {}\n# excluded_groups: {}\n",
            self.dataset_tag,
            if excluded.is_empty() {
                "none".to_string()
            } else {
                excluded.join(",")
            }
        )
    }

    /// `feature,rho` CSV, ranking order, with the dataset tag and excluded
    /// groups in header comments.
    pub fn to_feature_csv(&self) -> String {
        let mut out = self.header_comment();
        out.push_str("feature,rho\n");
        for (name, rho) in &self.features {
            out.push_str(&format!("{name},{rho}\n"));
        }
        out
    }

    /// Group -> MPC as JSON, with the dataset tag and exclusions.
    pub fn to_group_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    /// Tab-separated plot data (rank, feature, rho).
    pub fn to_plot_data(&self) -> String {
        let mut out = self.header_comment();
        out.push_str("# rank\tfeature\trho\n");
        for (rank, (name, rho)) in self.features.iter().enumerate() {
            out.push_str(&format!("{}\t{name}\t{rho}\n", rank + 1));
        }
        out
    }
}
