//! Audio-visual feature extraction and creativity classification for
//! micro-videos.

pub mod analysis;
pub mod audio;
pub mod audioaffect;
pub mod error;
pub mod extract;
pub mod features;
pub(crate) mod fft;
pub mod imgproc;
pub mod ingest;
pub mod learn;
pub mod novelty;
pub mod sensory;
pub mod table;
pub mod visaffect;

pub use error::{Error, Result};
