//! Media manifest loading (JSON lines, one record per line).

use std::collections::HashSet;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a video entered the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceTag {
    Hashtag,
    Blog,
    Creator,
    Random,
}

/// One manifest record pointing at the decoded media of a video.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MediaManifestEntry {
    pub video_id: String,
    pub frames_path: PathBuf,
    pub audio_path: PathBuf,
    pub source_tag: SourceTag,
}

impl MediaManifestEntry {
    fn validate(&self) -> Result<()> {
        if self.video_id.is_empty() {
            return Err(Error::Validation("manifest entry with empty video_id".into()));
        }
        if self.frames_path.as_os_str().is_empty() || self.audio_path.as_os_str().is_empty() {
            return Err(Error::Validation(format!(
                "manifest entry {} has an empty media path",
                self.video_id
            )));
        }
        Ok(())
    }
}

/// Parses a JSON-lines manifest. Blank lines are skipped; duplicate video
/// ids and malformed records are errors.
pub fn load_manifest(path: &Path) -> Result<Vec<MediaManifestEntry>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: MediaManifestEntry = serde_json::from_str(&line)
            .map_err(|e| Error::parse(path, idx + 1, e.to_string()))?;
        entry.validate()?;
        if !seen.insert(entry.video_id.clone()) {
            return Err(Error::Validation(format!(
                "duplicate video_id \"{}\" in manifest {}",
                entry.video_id,
                path.display()
            )));
        }
        entries.push(entry);
    }
    Ok(entries)
}
