//! Annotation records and agreement-thresholded labeled datasets.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One worker judgement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Vote {
    Positive,
    Negative,
    DontKnow,
}

impl Vote {
    fn parse(s: &str) -> Option<Vote> {
        match s.trim() {
            "P" | "p" => Some(Vote::Positive),
            "N" | "n" => Some(Vote::Negative),
            "U" | "u" => Some(Vote::DontKnow),
            _ => None,
        }
    }
}

/// Five independent worker votes for one video.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub video_id: String,
    pub votes: [Vote; 5],
}

/// Videos labeled creative/non-creative at an agreement threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    /// Required agreement among decisive votes, in (0.5, 1.0].
    pub threshold: f64,
    /// `(video_id, creative)` sorted by video id.
    pub entries: Vec<(String, bool)>,
}

impl LabeledDataset {
    pub fn n_creative(&self) -> usize {
        self.entries.iter().filter(|(_, label)| *label).count()
    }

    pub fn n_non_creative(&self) -> usize {
        self.entries.len() - self.n_creative()
    }

    pub fn label_of(&self, video_id: &str) -> Option<bool> {
        self.entries
            .binary_search_by(|(id, _)| id.as_str().cmp(video_id))
            .ok()
            .map(|i| self.entries[i].1)
    }
}

/// Minimum decisive votes for a video to be eligible at all.
pub const MIN_DECISIVE_VOTES: usize = 3;

/// Aggregates annotations into a labeled dataset.
///
/// "Don't know" votes are excluded from both sides of the agreement ratio;
/// videos with fewer than [`MIN_DECISIVE_VOTES`] decisive votes are dropped.
/// A video is included when `max(#pos, #neg) / #decisive >= threshold` and
/// labeled by majority. The result is sorted by video id, so the outcome is
/// independent of input order.
pub fn derive_dataset(
    annotations: &[AnnotationRecord],
    threshold: f64,
) -> Result<LabeledDataset> {
    if !(threshold > 0.5 && threshold <= 1.0) {
        return Err(Error::Validation(format!(
            "agreement threshold {threshold} outside (0.5, 1.0]"
        )));
    }
    let mut entries = Vec::new();
    for record in annotations {
        let pos = record
            .votes
            .iter()
            .filter(|v| **v == Vote::Positive)
            .count();
        let neg = record
            .votes
            .iter()
            .filter(|v| **v == Vote::Negative)
            .count();
        let decisive = pos + neg;
        if decisive < MIN_DECISIVE_VOTES {
            continue;
        }
        let agreement = pos.max(neg) as f64 / decisive as f64;
        if agreement >= threshold {
            entries.push((record.video_id.clone(), pos > neg));
        }
    }
    entries.sort();
    Ok(LabeledDataset { threshold, entries })
}

/// Reads `video_id,vote1..vote5` CSV with votes in {P, N, U}. A leading
/// `video_id,...` header line is tolerated.
pub fn load_annotations(path: &Path) -> Result<Vec<AnnotationRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::Validation(format!("cannot open {}: {e}", path.display())))?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (idx, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::parse(path, idx + 1, e.to_string()))?;
        if idx == 0 && row.get(0) == Some("video_id") {
            continue;
        }
        if row.len() != 6 {
            return Err(Error::parse(
                path,
                idx + 1,
                format!("expected 6 fields, got {}", row.len()),
            ));
        }
        let video_id = row.get(0).unwrap().to_string();
        if !seen.insert(video_id.clone()) {
            return Err(Error::Validation(format!(
                "duplicate video_id \"{video_id}\" in annotations"
            )));
        }
        let mut votes = [Vote::DontKnow; 5];
        for (i, slot) in votes.iter_mut().enumerate() {
            let field = row.get(i + 1).unwrap();
            *slot = Vote::parse(field).ok_or_else(|| {
                Error::parse(path, idx + 1, format!("bad vote \"{field}\""))
            })?;
        }
        out.push(AnnotationRecord { video_id, votes });
    }
    Ok(out)
}
