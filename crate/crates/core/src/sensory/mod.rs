//! Sensory aesthetic-value features: scene content, filmmaking technique,
//! and composition/photographic technique.

mod composition;
mod filmmaking;
mod scene;

pub use composition::{
    extract_composition, image_order, low_dof, michelson_contrast, rule_of_thirds, symmetry,
    uniqueness, CompositionVec,
};
pub use filmmaking::{
    camera_shake, count_shots, count_shots_with, extract_filmmaking, loop_distance, movement,
    movement_from_maps, stop_motion, stop_motion_with, FilmmakingConfig, FilmmakingVec,
    CHANGE_EPSILON, SHOT_THRESHOLD,
};
pub use scene::{scene_content, SCENE_CONTENT_DIM};

#[allow(unused_imports)]
pub(crate) use composition::hsv_mean_region;
