//! Feature group identities, dimensions and per-dimension names, shared by
//! extraction, novelty modeling, learning and analysis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The seven feature groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureGroup {
    SceneContent,
    Filmmaking,
    Composition,
    VisualAffect,
    AudioAffect,
    NoveltyVisual,
    NoveltyAudio,
}

impl FeatureGroup {
    pub const ALL: [FeatureGroup; 7] = [
        FeatureGroup::SceneContent,
        FeatureGroup::Filmmaking,
        FeatureGroup::Composition,
        FeatureGroup::VisualAffect,
        FeatureGroup::AudioAffect,
        FeatureGroup::NoveltyVisual,
        FeatureGroup::NoveltyAudio,
    ];

    /// The five attribute groups clustered by the novelty model, visual
    /// groups first in their canonical order.
    pub const VALUE_GROUPS: [FeatureGroup; 5] = [
        FeatureGroup::SceneContent,
        FeatureGroup::Filmmaking,
        FeatureGroup::Composition,
        FeatureGroup::VisualAffect,
        FeatureGroup::AudioAffect,
    ];

    /// Visual attribute groups in novelty concatenation order.
    pub const VISUAL_VALUE_GROUPS: [FeatureGroup; 4] = [
        FeatureGroup::SceneContent,
        FeatureGroup::Filmmaking,
        FeatureGroup::Composition,
        FeatureGroup::VisualAffect,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FeatureGroup::SceneContent => "scene_content",
            FeatureGroup::Filmmaking => "filmmaking",
            FeatureGroup::Composition => "composition",
            FeatureGroup::VisualAffect => "visual_affect",
            FeatureGroup::AudioAffect => "audio_affect",
            FeatureGroup::NoveltyVisual => "novelty_visual",
            FeatureGroup::NoveltyAudio => "novelty_audio",
        }
    }

    pub fn parse(s: &str) -> Result<FeatureGroup> {
        FeatureGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown feature group \"{s}\"")))
    }

    /// Vector dimension of this group. `visual_affect_extended` switches the
    /// visual affect group between its 25- and 27-dimensional variants.
    pub fn dim(&self, visual_affect_extended: bool) -> usize {
        match self {
            FeatureGroup::SceneContent => crate::sensory::SCENE_CONTENT_DIM,
            FeatureGroup::Filmmaking => 6,
            FeatureGroup::Composition => 17,
            FeatureGroup::VisualAffect => {
                if visual_affect_extended {
                    27
                } else {
                    25
                }
            }
            FeatureGroup::AudioAffect => 6,
            FeatureGroup::NoveltyVisual => 40,
            FeatureGroup::NoveltyAudio => 10,
        }
    }

    /// Frame-level groups are extracted per frame and expanded to 12
    /// training instances per video; the rest are one vector per video.
    pub fn is_frame_level(&self) -> bool {
        matches!(
            self,
            FeatureGroup::SceneContent | FeatureGroup::Composition | FeatureGroup::VisualAffect
        )
    }

    /// Human-readable names of the individual dimensions.
    pub fn feature_names(&self, visual_affect_extended: bool) -> Vec<String> {
        match self {
            FeatureGroup::SceneContent => (0..self.dim(visual_affect_extended))
                .map(|i| format!("sc_{i:03}"))
                .collect(),
            FeatureGroup::Filmmaking => [
                "n_frames",
                "n_shots",
                "stop_motion",
                "loop",
                "movement",
                "camera_shake",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            FeatureGroup::Composition => {
                let mut names = vec![
                    "hue_rot".to_string(),
                    "saturation_rot".to_string(),
                    "brightness_rot".to_string(),
                ];
                for ch in ["h", "s", "v"] {
                    for level in 1..=3 {
                        names.push(format!("low_dof_{ch}{level}"));
                    }
                }
                names.extend(
                    ["contrast", "symmetry", "uniqueness", "order_entropy", "order_complexity"]
                        .iter()
                        .map(|s| s.to_string()),
                );
                names
            }
            FeatureGroup::VisualAffect => {
                let mut names: Vec<String> = crate::visaffect::COLOR_NAMES
                    .iter()
                    .map(|c| format!("color_{c}"))
                    .collect();
                for offset in ["h", "v"] {
                    for stat in ["contrast", "dissimilarity", "energy", "homogeneity", "entropy"] {
                        names.push(format!("glcm_{stat}_{offset}"));
                    }
                }
                names.extend(
                    ["hue", "saturation", "brightness", "pleasure", "arousal", "dominance"]
                        .iter()
                        .map(|s| s.to_string()),
                );
                if visual_affect_extended {
                    names.push("skin".to_string());
                    names.push("level_of_detail".to_string());
                }
                names
            }
            FeatureGroup::AudioAffect => [
                "total_energy",
                "short_time_energy",
                "mode",
                "roughness",
                "onset_rate",
                "zero_crossing_rate",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            FeatureGroup::NoveltyVisual => {
                (0..40).map(|i| format!("nov_vis_{i:02}")).collect()
            }
            FeatureGroup::NoveltyAudio => (0..10).map(|i| format!("nov_aud_{i}")).collect(),
        }
    }
}

/// The five per-video attribute vectors the novelty model works on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueFeatures {
    pub scene_content: Vec<f64>,
    pub filmmaking: Vec<f64>,
    pub composition: Vec<f64>,
    pub visual_affect: Vec<f64>,
    pub audio_affect: Vec<f64>,
}

impl ValueFeatures {
    pub fn group(&self, group: FeatureGroup) -> Option<&[f64]> {
        match group {
            FeatureGroup::SceneContent => Some(&self.scene_content),
            FeatureGroup::Filmmaking => Some(&self.filmmaking),
            FeatureGroup::Composition => Some(&self.composition),
            FeatureGroup::VisualAffect => Some(&self.visual_affect),
            FeatureGroup::AudioAffect => Some(&self.audio_affect),
            _ => None,
        }
    }
}
