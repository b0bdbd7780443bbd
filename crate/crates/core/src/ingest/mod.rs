//! Media ingestion: manifests, asset decoding, frame sampling, and
//! agreement-thresholded dataset derivation.

mod dataset;
mod manifest;
mod video;

pub use dataset::{
    derive_dataset, load_annotations, AnnotationRecord, LabeledDataset, Vote,
    MIN_DECISIVE_VOTES,
};
pub use manifest::{load_manifest, MediaManifestEntry, SourceTag};
pub use video::{
    decode_asset, load_wav, sample_frame_indices, sample_frames, DecodeConfig, VideoAsset,
    DEFAULT_TARGET_RATE, RAW_VIDEO_MAGIC,
};
