//! Whole-video feature extraction: per-video vectors for every group plus
//! the 12-frame expansion rows for the frame-level groups.

use std::collections::{BTreeMap, BTreeSet};

use crate::audioaffect;
use crate::error::Result;
use crate::features::{FeatureGroup, ValueFeatures};
use crate::imgproc::GrayImage;
use crate::ingest::{sample_frame_indices, VideoAsset};
use crate::learn::FRAME_SAMPLES;
use crate::novelty::{novelty_vector, NoveltyModel};
use crate::sensory::{extract_composition, extract_filmmaking, scene_content, FilmmakingConfig};
use crate::visaffect::extract_visual_affect;

/// Extraction settings shared by the pipeline and the CLI.
#[derive(Debug, Clone)]
pub struct ExtractionConfig {
    pub filmmaking: FilmmakingConfig,
    pub visual_affect_extended: bool,
    pub frame_samples: usize,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        ExtractionConfig {
            filmmaking: FilmmakingConfig::default(),
            visual_affect_extended: false,
            frame_samples: FRAME_SAMPLES,
        }
    }
}

/// All features of one video: the per-video value vectors (middle frame for
/// frame-level groups) and the sampled frame rows used for training.
#[derive(Debug, Clone)]
pub struct VideoFeatures {
    pub video_id: String,
    pub value: ValueFeatures,
    /// group -> one row per sampled frame, for the frame-level groups.
    pub frame_rows: BTreeMap<FeatureGroup, Vec<Vec<f64>>>,
}

impl VideoFeatures {
    /// The per-video vector of a value group.
    pub fn video_row(&self, group: FeatureGroup) -> Option<&[f64]> {
        self.value.group(group)
    }
}

/// Extracts every value group from one asset. The corpus mean spectrum
/// feeds the uniqueness feature.
pub fn extract_video(
    asset: &VideoAsset,
    mean_spectrum: &GrayImage,
    cfg: &ExtractionConfig,
) -> Result<VideoFeatures> {
    let audio = audioaffect::extract(&asset.audio)?;
    let filmmaking = extract_filmmaking(asset, &cfg.filmmaking);

    let indices = sample_frame_indices(asset.n_frames(), cfg.frame_samples);
    let middle = asset.n_frames() / 2;
    let mut needed: BTreeSet<usize> = indices.iter().copied().collect();
    needed.insert(middle);

    struct FrameFeatures {
        scene: Vec<f64>,
        composition: Vec<f64>,
        visual_affect: Vec<f64>,
    }
    let mut per_frame: BTreeMap<usize, FrameFeatures> = BTreeMap::new();
    for &idx in &needed {
        let frame = &asset.frames[idx];
        per_frame.insert(
            idx,
            FrameFeatures {
                scene: scene_content(frame),
                composition: extract_composition(frame, mean_spectrum).to_vec(),
                visual_affect: extract_visual_affect(frame, cfg.visual_affect_extended)
                    .to_vec(),
            },
        );
    }

    let mid = &per_frame[&middle];
    let value = ValueFeatures {
        scene_content: mid.scene.clone(),
        filmmaking: filmmaking.to_vec(),
        composition: mid.composition.clone(),
        visual_affect: mid.visual_affect.clone(),
        audio_affect: audio.to_vec(),
    };

    let mut frame_rows = BTreeMap::new();
    frame_rows.insert(
        FeatureGroup::SceneContent,
        indices.iter().map(|i| per_frame[i].scene.clone()).collect(),
    );
    frame_rows.insert(
        FeatureGroup::Composition,
        indices
            .iter()
            .map(|i| per_frame[i].composition.clone())
            .collect(),
    );
    frame_rows.insert(
        FeatureGroup::VisualAffect,
        indices
            .iter()
            .map(|i| per_frame[i].visual_affect.clone())
            .collect(),
    );

    Ok(VideoFeatures {
        video_id: asset.video_id.clone(),
        value,
        frame_rows,
    })
}

/// Appends the two novelty rows for a video given a fitted model.
pub fn novelty_rows(
    features: &ValueFeatures,
    model: &NoveltyModel,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let nv = novelty_vector(features, model)?;
    Ok((nv.visual, nv.audio))
}
