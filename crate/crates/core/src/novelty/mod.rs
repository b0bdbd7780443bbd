//! Background attribute-space clustering and per-video novelty vectors:
//! the distance from a video's attribute vector to every cluster of a
//! background corpus, per feature group.

mod kmeans;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureGroup, ValueFeatures};
use crate::imgproc::{gray_analysis, log_amplitude_spectrum, Frame, GrayImage, ANALYSIS_SIZE};

use kmeans::squared_distance;

/// Clusters per attribute space.
pub const DEFAULT_K: usize = 10;

/// Serialized model format version.
pub const NOVELTY_MODEL_VERSION: u32 = 1;

/// Per-dimension standardization fitted on the background corpus.
/// Dimensions with zero spread are dropped from the scaled space but
/// recorded in `dropped`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub kept: Vec<usize>,
    pub dropped: Vec<usize>,
}

const STD_EPS: f64 = 1e-12;

impl Scaler {
    fn fit(rows: &[&[f64]]) -> Scaler {
        let dim = rows[0].len();
        let n = rows.len() as f64;
        let mut mean = vec![0.0; dim];
        for row in rows {
            for (m, v) in mean.iter_mut().zip(*row) {
                *m += v / n;
            }
        }
        let mut std = vec![0.0; dim];
        for row in rows {
            for ((s, v), m) in std.iter_mut().zip(*row).zip(&mean) {
                *s += (v - m) * (v - m) / n;
            }
        }
        for s in std.iter_mut() {
            *s = s.sqrt();
        }
        let (kept, dropped): (Vec<usize>, Vec<usize>) =
            (0..dim).partition(|&i| std[i] > STD_EPS);
        Scaler {
            mean,
            std,
            kept,
            dropped,
        }
    }

    pub fn input_dim(&self) -> usize {
        self.mean.len()
    }

    /// z-scores the kept dimensions.
    pub fn transform(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.mean.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mean.len(),
                actual: x.len(),
                context: "scaler input".into(),
            });
        }
        Ok(self
            .kept
            .iter()
            .map(|&i| (x[i] - self.mean[i]) / self.std[i])
            .collect())
    }

    /// Maps a scaled point back to the original coordinates; dropped
    /// dimensions take their corpus mean.
    pub fn inverse(&self, z: &[f64]) -> Vec<f64> {
        let mut out = self.mean.clone();
        for (&i, v) in self.kept.iter().zip(z) {
            out[i] = v * self.std[i] + self.mean[i];
        }
        out
    }
}

/// Scaler plus cluster centroids for one feature group, in scaled space,
/// canonically ordered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeSpace {
    pub group: FeatureGroup,
    pub scaler: Scaler,
    pub centroids: Vec<Vec<f64>>,
}

impl AttributeSpace {
    /// Distances from a raw feature vector to all centroids.
    pub fn distances(&self, x: &[f64]) -> Result<Vec<f64>> {
        let z = self.scaler.transform(x)?;
        Ok(self
            .centroids
            .iter()
            .map(|c| squared_distance(&z, c).sqrt())
            .collect())
    }

    /// Centroids mapped back to raw feature coordinates.
    pub fn centroids_raw(&self) -> Vec<Vec<f64>> {
        self.centroids
            .iter()
            .map(|c| self.scaler.inverse(c))
            .collect()
    }
}

/// The fitted novelty model: five attribute spaces plus the corpus mean
/// log-amplitude spectrum that backs the uniqueness feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoveltyModel {
    pub version: u32,
    pub seed: u64,
    pub k: usize,
    pub corpus_size: usize,
    /// One space per [`FeatureGroup::VALUE_GROUPS`] entry, in that order.
    pub spaces: Vec<AttributeSpace>,
    /// Row-major 64x64 mean log-amplitude spectrum.
    pub mean_spectrum: Vec<f64>,
}

/// Per-video novelty distances: 40 visual (4 groups x 10 clusters, group
/// major) and 10 audio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoveltyVec {
    pub visual: Vec<f64>,
    pub audio: Vec<f64>,
}

impl NoveltyModel {
    pub fn space(&self, group: FeatureGroup) -> Option<&AttributeSpace> {
        self.spaces.iter().find(|s| s.group == group)
    }

    pub fn mean_spectrum_image(&self) -> GrayImage {
        GrayImage::from_raw(ANALYSIS_SIZE, ANALYSIS_SIZE, self.mean_spectrum.clone())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<NoveltyModel> {
        let model: NoveltyModel =
            serde_json::from_str(s).map_err(|e| Error::Serialization(e.to_string()))?;
        if model.version != NOVELTY_MODEL_VERSION {
            return Err(Error::Model(format!(
                "novelty model version {} unsupported (expected {NOVELTY_MODEL_VERSION})",
                model.version
            )));
        }
        Ok(model)
    }
}

/// Fits the novelty model on a background corpus of per-video value
/// features. The corpus mean spectrum (from the same corpus) is embedded in
/// the model for the uniqueness feature.
///
/// Videos are processed in video-id order, so the result is independent of
/// input order. Each group gets its own ChaCha stream derived from `seed`.
pub fn fit_novelty_model(
    background: &[(String, ValueFeatures)],
    mean_spectrum: &GrayImage,
    k: usize,
    seed: u64,
) -> Result<NoveltyModel> {
    if background.len() < k {
        return Err(Error::Model(format!(
            "background corpus of {} videos smaller than k = {k}",
            background.len()
        )));
    }
    if mean_spectrum.data().len() != ANALYSIS_SIZE * ANALYSIS_SIZE {
        return Err(Error::DimensionMismatch {
            expected: ANALYSIS_SIZE * ANALYSIS_SIZE,
            actual: mean_spectrum.data().len(),
            context: "mean spectrum grid".into(),
        });
    }

    let mut order: Vec<usize> = (0..background.len()).collect();
    order.sort_by(|&a, &b| background[a].0.cmp(&background[b].0));

    let mut spaces = Vec::with_capacity(FeatureGroup::VALUE_GROUPS.len());
    for (gi, group) in FeatureGroup::VALUE_GROUPS.into_iter().enumerate() {
        let rows: Vec<&[f64]> = order
            .iter()
            .map(|&i| background[i].1.group(group).expect("value group"))
            .collect();
        let dim = rows[0].len();
        for (&i, row) in order.iter().zip(&rows) {
            let (id, _) = &background[i];
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                    context: format!("{} features of video {id}", group.name()),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Model(format!(
                    "non-finite {} feature for video {id}",
                    group.name()
                )));
            }
        }
        let scaler = Scaler::fit(&rows);
        let scaled: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| scaler.transform(r).expect("dims checked"))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(gi as u64));
        let centroids = kmeans::kmeans(&scaled, k, &mut rng);
        spaces.push(AttributeSpace {
            group,
            scaler,
            centroids,
        });
    }

    Ok(NoveltyModel {
        version: NOVELTY_MODEL_VERSION,
        seed,
        k,
        corpus_size: background.len(),
        spaces,
        mean_spectrum: mean_spectrum.data().to_vec(),
    })
}

/// Elementwise mean log-amplitude spectrum over a set of frames.
pub fn corpus_mean_spectrum<'a>(
    frames: impl IntoIterator<Item = &'a Frame>,
) -> Result<GrayImage> {
    let mut acc = vec![0.0f64; ANALYSIS_SIZE * ANALYSIS_SIZE];
    let mut count = 0usize;
    for frame in frames {
        let spec = log_amplitude_spectrum(&gray_analysis(frame));
        for (a, v) in acc.iter_mut().zip(spec.data()) {
            *a += v;
        }
        count += 1;
    }
    if count == 0 {
        return Err(Error::Model("mean spectrum of an empty corpus".into()));
    }
    for a in acc.iter_mut() {
        *a /= count as f64;
    }
    Ok(GrayImage::from_raw(ANALYSIS_SIZE, ANALYSIS_SIZE, acc))
}

/// Distances from one video's value features to every cluster: 40 visual
/// entries in group-major order and 10 audio entries.
pub fn novelty_vector(features: &ValueFeatures, model: &NoveltyModel) -> Result<NoveltyVec> {
    let mut visual = Vec::with_capacity(4 * model.k);
    for group in FeatureGroup::VISUAL_VALUE_GROUPS {
        let space = model
            .space(group)
            .ok_or_else(|| Error::Model(format!("model lacks {} space", group.name())))?;
        visual.extend(space.distances(features.group(group).expect("value group"))?);
    }
    let audio_space = model
        .space(FeatureGroup::AudioAffect)
        .ok_or_else(|| Error::Model("model lacks audio space".into()))?;
    let audio = audio_space.distances(&features.audio_affect)?;
    Ok(NoveltyVec { visual, audio })
}
