//! Model bundle layout shared by `train` and `evaluate`: a directory with
//! bundle.json, split.json and one classifier file per group.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use microvid_core::features::FeatureGroup;
use microvid_core::learn::{GroupClassifier, GroupInstances, SplitPlan};
use microvid_core::table::{write_text, FeatureTable, FrameTable};

pub const BUNDLE_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct BundleManifest {
    pub version: u32,
    pub threshold_pct: u32,
    pub seed: u64,
    pub groups: Vec<FeatureGroup>,
    pub config_hash: String,
    pub n_train_videos: usize,
    pub n_test_videos: usize,
    pub dropped_missing_features: usize,
}

pub fn write_bundle(
    dir: &Path,
    manifest: &BundleManifest,
    split: &SplitPlan,
    classifiers: &BTreeMap<FeatureGroup, GroupClassifier>,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_text(
        &dir.join("bundle.json"),
        &serde_json::to_string_pretty(manifest)?,
    )?;
    write_text(&dir.join("split.json"), &serde_json::to_string_pretty(split)?)?;
    for (group, clf) in classifiers {
        write_text(
            &dir.join(format!("classifier_{}.json", group.name())),
            &serde_json::to_string(clf)?,
        )?;
    }
    Ok(())
}

pub fn read_bundle(
    dir: &Path,
) -> Result<(BundleManifest, SplitPlan, BTreeMap<FeatureGroup, GroupClassifier>)> {
    let manifest: BundleManifest = serde_json::from_str(
        &std::fs::read_to_string(dir.join("bundle.json"))
            .with_context(|| format!("no bundle.json under {}", dir.display()))?,
    )?;
    if manifest.version != BUNDLE_VERSION {
        bail!("bundle version {} unsupported", manifest.version);
    }
    let split: SplitPlan =
        serde_json::from_str(&std::fs::read_to_string(dir.join("split.json"))?)?;
    let mut classifiers = BTreeMap::new();
    for group in &manifest.groups {
        let path = dir.join(format!("classifier_{}.json", group.name()));
        let clf: GroupClassifier = serde_json::from_str(
            &std::fs::read_to_string(&path)
                .with_context(|| format!("missing {}", path.display()))?,
        )?;
        classifiers.insert(*group, clf);
    }
    Ok((manifest, split, classifiers))
}

/// Bundle directories to evaluate: the directory itself if it holds a
/// bundle.json, otherwise its immediate subdirectories that do.
pub fn discover_bundles(root: &Path) -> Result<Vec<PathBuf>> {
    if root.join("bundle.json").exists() {
        return Ok(vec![root.to_path_buf()]);
    }
    let mut found = Vec::new();
    for entry in std::fs::read_dir(root)
        .with_context(|| format!("cannot read {}", root.display()))?
    {
        let path = entry?.path();
        if path.is_dir() && path.join("bundle.json").exists() {
            found.push(path);
        }
    }
    found.sort();
    if found.is_empty() {
        bail!("no model bundles under {}", root.display());
    }
    Ok(found)
}

/// Builds the per-video instance rows for one group over the given videos:
/// sampled frame rows for frame-level groups, the single table row
/// otherwise. Returns None if any video lacks its rows.
pub fn instances_for(
    group: FeatureGroup,
    ids: &[&str],
    features: &FeatureTable,
    frames: &FrameTable,
) -> Option<GroupInstances> {
    let mut gi = GroupInstances::new(group);
    for &id in ids {
        let rows = if group.is_frame_level() {
            frames.get(id, group)?.clone()
        } else {
            vec![features.get(id, group)?.to_vec()]
        };
        gi.by_video.insert(id.to_string(), rows);
    }
    Some(gi)
}

/// The fused score rows reported next to the per-group accuracies.
pub fn fusion_subsets() -> Vec<(&'static str, Vec<FeatureGroup>)> {
    use FeatureGroup::*;
    vec![
        ("all_sensory", vec![SceneContent, Filmmaking, Composition]),
        ("all_emotional", vec![VisualAffect, AudioAffect]),
        (
            "all_aesthetic_value",
            vec![SceneContent, Filmmaking, Composition, VisualAffect, AudioAffect],
        ),
        ("novelty_audio_visual", vec![NoveltyVisual, NoveltyAudio]),
        ("novelty_plus_value", FeatureGroup::ALL.to_vec()),
    ]
}
