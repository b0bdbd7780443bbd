//! Video technique features: shot count, stop motion, loop distance,
//! movement and camera shake.

use crate::imgproc::{
    gray_analysis, hough_angles, rms_distance, spectral_residual_saliency, to_gray, Frame,
    GrayImage, SaliencyMap,
};
use crate::ingest::VideoAsset;

/// Frame distance above which a cut is counted.
pub const SHOT_THRESHOLD: f64 = 0.30;

/// Frame distance above which the scene is considered to have changed;
/// real video noise makes exact zero unattainable.
pub const CHANGE_EPSILON: f64 = 0.01;

/// Tunable thresholds for the filmmaking features.
#[derive(Debug, Clone, Copy)]
pub struct FilmmakingConfig {
    pub shot_threshold: f64,
    pub change_epsilon: f64,
}

impl Default for FilmmakingConfig {
    fn default() -> Self {
        FilmmakingConfig {
            shot_threshold: SHOT_THRESHOLD,
            change_epsilon: CHANGE_EPSILON,
        }
    }
}

/// The 6-dimensional video technique vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilmmakingVec {
    pub n_frames: usize,
    pub n_shots: usize,
    pub stop_motion: f64,
    pub loop_distance: f64,
    pub movement: f64,
    pub camera_shake: f64,
}

impl FilmmakingVec {
    pub const DIM: usize = 6;

    pub fn to_vec(&self) -> Vec<f64> {
        vec![
            self.n_frames as f64,
            self.n_shots as f64,
            self.stop_motion,
            self.loop_distance,
            self.movement,
            self.camera_shake,
        ]
    }
}

/// Luminance planes on the analysis grid, shared by all distance-based
/// features of one asset.
fn analysis_planes(asset: &VideoAsset) -> Vec<GrayImage> {
    asset.frames.iter().map(gray_analysis).collect()
}

fn consecutive_deltas(planes: &[GrayImage]) -> Vec<f64> {
    planes
        .windows(2)
        .map(|w| rms_distance(w[0].data(), w[1].data()))
        .collect()
}

/// Number of shots: one plus the number of adjacent-frame distances above
/// the cut threshold.
pub fn count_shots(asset: &VideoAsset) -> usize {
    count_shots_with(asset, SHOT_THRESHOLD)
}

pub fn count_shots_with(asset: &VideoAsset, shot_threshold: f64) -> usize {
    let deltas = consecutive_deltas(&analysis_planes(asset));
    1 + deltas.iter().filter(|&&d| d > shot_threshold).count()
}

/// Stop-motion measure: N_f over one plus the number of changed transitions.
/// Identical frames score N_f, fully changing video scores 1.
pub fn stop_motion(asset: &VideoAsset) -> f64 {
    stop_motion_with(asset, CHANGE_EPSILON)
}

pub fn stop_motion_with(asset: &VideoAsset, change_epsilon: f64) -> f64 {
    let deltas = consecutive_deltas(&analysis_planes(asset));
    let changes = deltas.iter().filter(|&&d| d > change_epsilon).count();
    asset.n_frames() as f64 / (1.0 + changes as f64)
}

/// Distance between the first and last frame; low values indicate loopable
/// videos.
pub fn loop_distance(asset: &VideoAsset) -> f64 {
    let first = gray_analysis(&asset.frames[0]);
    let last = gray_analysis(&asset.frames[asset.n_frames() - 1]);
    rms_distance(first.data(), last.data())
}

/// Average distance between saliency maps of adjacent frames; the sum over
/// the N_f - 1 transitions is divided by N_f.
pub fn movement(asset: &VideoAsset) -> f64 {
    let maps: Vec<SaliencyMap> = asset
        .frames
        .iter()
        .map(spectral_residual_saliency)
        .collect();
    movement_from_maps(&maps)
}

/// The movement sum over precomputed maps; exposed so callers holding maps
/// do not recompute them.
pub fn movement_from_maps(maps: &[SaliencyMap]) -> f64 {
    let sum: f64 = maps
        .windows(2)
        .map(|w| rms_distance(w[0].data(), w[1].data()))
        .sum();
    sum / maps.len() as f64
}

/// Camera shake in [0, 1]: one minus the mean directionality of 4x4 image
/// blocks, averaged over frames. Blank blocks are skipped; an all-blank
/// video scores 0.
pub fn camera_shake(asset: &VideoAsset) -> f64 {
    let per_frame: Vec<f64> = asset.frames.iter().map(frame_shake).collect();
    per_frame.iter().sum::<f64>() / per_frame.len() as f64
}

fn frame_shake(frame: &Frame) -> f64 {
    let gray = to_gray(frame);
    let w = gray.width();
    let h = gray.height();
    let mut directionality = Vec::new();
    for by in 0..4 {
        for bx in 0..4 {
            let x0 = bx * w / 4;
            let x1 = (bx + 1) * w / 4;
            let y0 = by * h / 4;
            let y1 = (by + 1) * h / 4;
            if x1 <= x0 || y1 <= y0 {
                continue;
            }
            let block = gray.crop(x0, y0, x1, y1);
            let hist = hough_angles(&block);
            if hist.total() > 0.0 {
                directionality.push(hist.directionality());
            }
        }
    }
    if directionality.is_empty() {
        return 0.0;
    }
    1.0 - directionality.iter().sum::<f64>() / directionality.len() as f64
}

/// All six filmmaking features of one asset, computing shared intermediates
/// once.
pub fn extract_filmmaking(asset: &VideoAsset, cfg: &FilmmakingConfig) -> FilmmakingVec {
    let planes = analysis_planes(asset);
    let deltas = consecutive_deltas(&planes);
    let cuts = deltas.iter().filter(|&&d| d > cfg.shot_threshold).count();
    let changes = deltas.iter().filter(|&&d| d > cfg.change_epsilon).count();
    let maps: Vec<SaliencyMap> = asset
        .frames
        .iter()
        .map(spectral_residual_saliency)
        .collect();
    FilmmakingVec {
        n_frames: asset.n_frames(),
        n_shots: 1 + cuts,
        stop_motion: asset.n_frames() as f64 / (1.0 + changes as f64),
        loop_distance: rms_distance(planes[0].data(), planes[planes.len() - 1].data()),
        movement: movement_from_maps(&maps),
        camera_shake: camera_shake(asset),
    }
}
