//! Deterministic image-processing primitives shared by the visual feature
//! extractors. Everything here is a pure function of its inputs.

mod edges;
mod frame;
mod glcm;
mod haar;
mod hough;
mod saliency;
mod spectrum;

pub use edges::{
    edge_histogram, sobel_gradients, sobel_magnitude, EDGE_MAGNITUDE_FRACTION,
    EDGE_ORIENTATIONS, EDGE_VOTE_THRESHOLD,
};
pub use frame::{
    frame_distance, gray_analysis, rgb_to_hsv, rms_distance, to_gray, Frame, GrayImage,
    ANALYSIS_SIZE,
};
pub use glcm::{glcm, quantize_level, GlcMatrix, GlcmStats, GLCM_LEVELS};
pub use haar::{haar_pyramid, HaarLevel, HaarPyramid};
pub use hough::{hough_angles, AngularHistogram, ANGLE_BINS};
pub use saliency::{saliency_of_grid, spectral_residual_saliency, SaliencyMap};
pub use spectrum::{log_amplitude_spectrum, spectrum_distance};

#[allow(unused_imports)]
pub(crate) use saliency::residual_spectrum;
