//! Per-group classifier training, video-level prediction and median score
//! fusion.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureGroup;

use super::split::SplitPlan;
use super::svm::{fit_platt, train_svm, PlattParams, SvmConfig, SvmModel};

/// Frames sampled per video for frame-level groups.
pub const FRAME_SAMPLES: usize = 12;

/// Train-set standardization; zero-spread dimensions are centered only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureScaler {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl FeatureScaler {
    pub fn fit(rows: &[&[f64]]) -> FeatureScaler {
        let dim = rows[0].len();
        let n = rows.len() as f64;
        let mut mean = vec![0.0; dim];
        for row in rows {
            for (m, v) in mean.iter_mut().zip(*row) {
                *m += v / n;
            }
        }
        let mut var = vec![0.0; dim];
        for row in rows {
            for ((s, v), m) in var.iter_mut().zip(*row).zip(&mean) {
                *s += (v - m) * (v - m) / n;
            }
        }
        let scale = var
            .iter()
            .map(|v| {
                let s = v.sqrt();
                if s > 1e-12 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        FeatureScaler { mean, scale }
    }

    pub fn transform(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.mean.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mean.len(),
                actual: x.len(),
                context: "classifier input".into(),
            });
        }
        Ok(x.iter()
            .zip(self.mean.iter().zip(&self.scale))
            .map(|(v, (m, s))| (v - m) / s)
            .collect())
    }
}

/// Trained classifier for one feature group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupClassifier {
    pub group: FeatureGroup,
    pub scaler: FeatureScaler,
    pub svm: SvmModel,
    pub calibration: PlattParams,
}

impl GroupClassifier {
    /// Raw margin of one instance.
    pub fn decision(&self, x: &[f64]) -> Result<f64> {
        Ok(self.svm.decision(&self.scaler.transform(x)?))
    }

    /// (label, calibrated score) of one instance.
    pub fn predict_instance(&self, x: &[f64]) -> Result<(bool, f64)> {
        let margin = self.decision(x)?;
        Ok((margin > 0.0, self.calibration.score(margin)))
    }
}

/// Per-video instance rows for one group: 12 rows for frame-level groups,
/// 1 for video-level groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupInstances {
    pub group: FeatureGroup,
    pub by_video: BTreeMap<String, Vec<Vec<f64>>>,
}

impl GroupInstances {
    pub fn new(group: FeatureGroup) -> Self {
        GroupInstances {
            group,
            by_video: BTreeMap::new(),
        }
    }
}

/// Trains the classifier for one group on the split's training videos.
/// Every row of a training video becomes one instance carrying the video
/// label.
pub fn train_group_model(
    instances: &GroupInstances,
    split: &SplitPlan,
    cfg: &SvmConfig,
) -> Result<GroupClassifier> {
    let mut rows: Vec<&[f64]> = Vec::new();
    let mut labels: Vec<f64> = Vec::new();
    for (id, label) in split.train_ids() {
        let video_rows = instances.by_video.get(id).ok_or_else(|| {
            Error::Validation(format!(
                "no {} features for training video {id}",
                instances.group.name()
            ))
        })?;
        for row in video_rows {
            rows.push(row);
            labels.push(if label { 1.0 } else { -1.0 });
        }
    }
    if rows.is_empty() {
        return Err(Error::Validation("empty training set".into()));
    }

    let scaler = FeatureScaler::fit(&rows);
    let scaled: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| scaler.transform(r).expect("fit dims"))
        .collect();
    let svm = train_svm(&scaled, &labels, cfg)?;
    let margins: Vec<f64> = scaled.iter().map(|r| svm.decision(r)).collect();
    let bool_labels: Vec<bool> = labels.iter().map(|&l| l > 0.0).collect();
    let calibration = fit_platt(&margins, &bool_labels)?;
    Ok(GroupClassifier {
        group: instances.group,
        scaler,
        svm,
        calibration,
    })
}

/// Video-level prediction: per-row labels are majority-voted (mean label
/// rounded, ties rounding up to creative) and the video score is the mean
/// calibrated row score.
pub fn predict_video(classifier: &GroupClassifier, rows: &[Vec<f64>]) -> Result<(bool, f64)> {
    if rows.is_empty() {
        return Err(Error::Validation("predict_video with no instances".into()));
    }
    let mut label_sum = 0.0;
    let mut score_sum = 0.0;
    for row in rows {
        let (label, score) = classifier.predict_instance(row)?;
        label_sum += if label { 1.0 } else { 0.0 };
        score_sum += score;
    }
    let mean_label = label_sum / rows.len() as f64;
    Ok((mean_label >= 0.5, score_sum / rows.len() as f64))
}

/// Median of the per-group scores; even counts average the central pair.
/// The fused label is `median >= 0.5`.
pub fn fuse_median(scores: &[f64]) -> Result<(f64, bool)> {
    if scores.is_empty() {
        return Err(Error::Validation("median fusion of no scores".into()));
    }
    let mut sorted = scores.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    Ok((median, median >= 0.5))
}

/// Fraction of predictions matching the truth; ids must align.
pub fn evaluate_accuracy(
    predictions: &[(String, bool)],
    truth: &BTreeMap<String, bool>,
) -> Result<f64> {
    if predictions.is_empty() {
        return Err(Error::Validation("accuracy of no predictions".into()));
    }
    let mut correct = 0usize;
    for (id, label) in predictions {
        let expected = truth
            .get(id)
            .ok_or_else(|| Error::Validation(format!("no ground truth for video {id}")))?;
        if expected == label {
            correct += 1;
        }
    }
    Ok(correct as f64 / predictions.len() as f64)
}
