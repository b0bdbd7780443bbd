//! `microvid train`: balanced split plus one RBF classifier per group, per
//! dataset variant.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use rayon::prelude::*;

use microvid_core::features::FeatureGroup;
use microvid_core::ingest::{derive_dataset, load_annotations, LabeledDataset};
use microvid_core::learn::{split_dataset, train_group_model, GroupClassifier, SvmConfig};
use microvid_core::table::{FeatureTable, FrameTable};

use crate::commands::bundle::{instances_for, write_bundle, BundleManifest, BUNDLE_VERSION};
use crate::config::{config_hash, parse_groups, parse_thresholds, FileConfig};
use crate::{log_line, EXIT_OK};

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Directory produced by `extract` (features + frame tables).
    #[arg(long)]
    pub features: Option<PathBuf>,
    /// Annotation CSV.
    #[arg(long)]
    pub annotations: Option<PathBuf>,
    /// Agreement threshold percent(s), comma separated.
    #[arg(long)]
    pub threshold: Option<String>,
    /// Output directory; one bundle subdirectory per variant.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated groups to train (default: all).
    #[arg(long)]
    pub groups: Option<String>,
}

pub fn run(args: TrainArgs, file_cfg: &FileConfig) -> Result<i32> {
    let features_dir = args
        .features
        .or_else(|| file_cfg.features.clone())
        .context("--features is required")?;
    let annotations_path = args
        .annotations
        .or_else(|| file_cfg.annotations.clone())
        .context("--annotations is required")?;
    let out_dir = args
        .out
        .or_else(|| file_cfg.out.clone())
        .context("--out is required")?;
    let seed = args.seed.or(file_cfg.seed).unwrap_or(0);
    let thresholds = parse_thresholds(args.threshold.as_deref(), file_cfg)?;
    let groups = parse_groups(args.groups.as_deref(), file_cfg)?;

    let (features, frames) = load_tables(&features_dir)?;
    let records = load_annotations(&annotations_path)?;
    std::fs::create_dir_all(&out_dir)?;

    let svm_cfg = SvmConfig {
        cost: file_cfg.hyper.cost.unwrap_or(1.0),
        gamma: file_cfg.hyper.gamma,
        seed,
        ..SvmConfig::default()
    };
    let grid_search = file_cfg.hyper.grid_search.unwrap_or(false);

    for (pct, fraction) in &thresholds {
        let dataset = derive_dataset(&records, *fraction)?;
        let (usable, dropped) = restrict_to_features(&dataset, &features, &frames, &groups);
        if dropped > 0 {
            eprintln!("D-{pct}: dropped {dropped} labeled videos without features");
        }
        let split = split_dataset(&usable, seed)?;
        let train_ids: Vec<&str> = split.train_ids().map(|(id, _)| id).collect();

        let trained: Vec<(FeatureGroup, Result<GroupClassifier>)> = groups
            .par_iter()
            .map(|&group| {
                let gi = instances_for(group, &train_ids, &features, &frames)
                    .with_context(|| format!("missing {} rows for training", group.name()));
                let result = gi.and_then(|gi| {
                    let cfg = if grid_search {
                        tune_hyperparameters(&gi, &split, &svm_cfg)
                    } else {
                        svm_cfg.clone()
                    };
                    train_group_model(&gi, &split, &cfg).map_err(Into::into)
                });
                (group, result)
            })
            .collect();

        let mut classifiers = BTreeMap::new();
        for (group, result) in trained {
            classifiers.insert(group, result?);
        }

        let manifest = BundleManifest {
            version: BUNDLE_VERSION,
            threshold_pct: *pct,
            seed,
            groups: groups.clone(),
            config_hash: config_hash(file_cfg),
            n_train_videos: split.train_pos.len() + split.train_neg.len(),
            n_test_videos: split.test_pos.len() + split.test_neg.len(),
            dropped_missing_features: dropped,
        };
        let bundle_dir = out_dir.join(format!("d{pct}"));
        write_bundle(&bundle_dir, &manifest, &split, &classifiers)?;
        log_line(
            &out_dir,
            &format!(
                "train: D-{pct} {} train / {} test videos, {} groups",
                manifest.n_train_videos,
                manifest.n_test_videos,
                groups.len()
            ),
        );
        println!(
            "D-{pct}: trained {} groups on {} videos ({} positives train) -> {}",
            groups.len(),
            manifest.n_train_videos,
            split.train_pos.len(),
            bundle_dir.display()
        );
    }
    Ok(EXIT_OK)
}

pub fn load_tables(dir: &Path) -> Result<(FeatureTable, FrameTable)> {
    let features_path = ["features.csv", "features.bin"]
        .iter()
        .map(|name| dir.join(name))
        .find(|p| p.exists())
        .with_context(|| format!("no feature table under {}", dir.display()))?;
    let features = FeatureTable::read_auto(&features_path)?;
    let frames_path = dir.join("features_frames.csv");
    let frames = if frames_path.exists() {
        FrameTable::read_csv(&frames_path)?
    } else {
        FrameTable::default()
    };
    Ok((features, frames))
}

/// Keeps only labeled videos whose selected feature rows all exist.
pub fn restrict_to_features(
    dataset: &LabeledDataset,
    features: &FeatureTable,
    frames: &FrameTable,
    groups: &[FeatureGroup],
) -> (LabeledDataset, usize) {
    let mut entries = Vec::new();
    let mut dropped = 0usize;
    for (id, label) in &dataset.entries {
        let complete = groups.iter().all(|g| {
            if g.is_frame_level() {
                features.get(id, *g).is_some() && frames.get(id, *g).is_some()
            } else {
                features.get(id, *g).is_some()
            }
        });
        if complete {
            entries.push((id.clone(), *label));
        } else {
            dropped += 1;
        }
    }
    (
        LabeledDataset {
            threshold: dataset.threshold,
            entries,
        },
        dropped,
    )
}

/// 3x3 grid search on a held-out third of the training videos; returns the
/// winning configuration (ties keep the earlier candidate).
fn tune_hyperparameters(
    gi: &microvid_core::learn::GroupInstances,
    split: &microvid_core::learn::SplitPlan,
    base: &SvmConfig,
) -> SvmConfig {
    use microvid_core::learn::{predict_video, SplitPlan};

    let carve = |ids: &[String]| -> (Vec<String>, Vec<String>) {
        let fit = ids.len() * 2 / 3;
        (ids[..fit].to_vec(), ids[fit..].to_vec())
    };
    let (fit_pos, val_pos) = carve(&split.train_pos);
    let (fit_neg, val_neg) = carve(&split.train_neg);
    if val_pos.is_empty() || val_neg.is_empty() {
        return base.clone();
    }
    let inner = SplitPlan {
        seed: split.seed,
        train_pos: fit_pos,
        test_pos: val_pos.clone(),
        train_neg: fit_neg,
        test_neg: val_neg.clone(),
    };

    let dim = gi
        .by_video
        .values()
        .next()
        .and_then(|rows| rows.first())
        .map(|r| r.len().max(1))
        .unwrap_or(1);
    let gamma0 = base.gamma.unwrap_or(1.0 / dim as f64);
    let mut best = base.clone();
    let mut best_acc = -1.0;
    for cost in [base.cost * 0.1, base.cost, base.cost * 10.0] {
        for gamma in [gamma0 / 4.0, gamma0, gamma0 * 4.0] {
            let candidate = SvmConfig {
                cost,
                gamma: Some(gamma),
                ..base.clone()
            };
            let Ok(clf) = train_group_model(gi, &inner, &candidate) else {
                continue;
            };
            let mut correct = 0usize;
            let mut total = 0usize;
            for (id, label) in inner.test_ids() {
                if let Some(rows) = gi.by_video.get(id) {
                    if let Ok((pred, _)) = predict_video(&clf, rows) {
                        total += 1;
                        if pred == label {
                            correct += 1;
                        }
                    }
                }
            }
            let acc = if total > 0 {
                correct as f64 / total as f64
            } else {
                0.0
            };
            if acc > best_acc {
                best_acc = acc;
                best = candidate;
            }
        }
    }
    best
}
