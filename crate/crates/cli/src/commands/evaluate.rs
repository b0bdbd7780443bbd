//! `microvid evaluate`: per-group and fused accuracies of trained bundles
//! on their held-out test split.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;

use microvid_core::features::FeatureGroup;
use microvid_core::learn::{evaluate_accuracy, fuse_median, predict_video};
use microvid_core::table::write_text;

use crate::commands::bundle::{discover_bundles, fusion_subsets, instances_for, read_bundle};
use crate::commands::train::load_tables;
use crate::config::FileConfig;
use crate::{log_line, EXIT_OK};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// A bundle directory, or a directory of per-variant bundles.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Directory produced by `extract` over the evaluation corpus.
    #[arg(long)]
    pub features: Option<PathBuf>,
    /// Output directory for reports.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct VariantReport {
    threshold_pct: u32,
    n_test_videos: usize,
    group_accuracy: BTreeMap<String, f64>,
    fused_accuracy: BTreeMap<String, f64>,
}

pub fn run(args: EvaluateArgs, file_cfg: &FileConfig) -> Result<i32> {
    let model_dir = args
        .model
        .or_else(|| file_cfg.model.clone())
        .context("--model is required")?;
    let features_dir = args
        .features
        .or_else(|| file_cfg.features.clone())
        .context("--features is required")?;
    let out_dir = args
        .out
        .or_else(|| file_cfg.out.clone())
        .context("--out is required")?;

    let (features, frames) = load_tables(&features_dir)?;
    let bundles = discover_bundles(&model_dir)?;
    std::fs::create_dir_all(&out_dir)?;

    let mut text_report = String::new();
    let mut json_reports = Vec::new();
    for bundle_dir in bundles {
        let (manifest, split, classifiers) = read_bundle(&bundle_dir)?;
        let truth: BTreeMap<String, bool> = split
            .test_ids()
            .map(|(id, label)| (id.to_string(), label))
            .collect();
        let test_ids: Vec<&str> = truth.keys().map(String::as_str).collect();

        // Per-group predictions for every test video.
        let mut group_predictions: BTreeMap<FeatureGroup, Vec<(String, bool)>> = BTreeMap::new();
        let mut group_scores: BTreeMap<FeatureGroup, BTreeMap<String, f64>> = BTreeMap::new();
        for (&group, clf) in &classifiers {
            let gi = instances_for(group, &test_ids, &features, &frames)
                .with_context(|| format!("missing {} rows for evaluation", group.name()))?;
            let mut preds = Vec::new();
            let mut scores = BTreeMap::new();
            for (id, rows) in &gi.by_video {
                let (label, score) = predict_video(clf, rows)?;
                preds.push((id.clone(), label));
                scores.insert(id.clone(), score);
            }
            group_predictions.insert(group, preds);
            group_scores.insert(group, scores);
        }

        let mut group_accuracy = BTreeMap::new();
        for (group, preds) in &group_predictions {
            group_accuracy.insert(
                group.name().to_string(),
                evaluate_accuracy(preds, &truth)?,
            );
        }

        // Median fusion over subsets whose groups were all trained.
        let mut fused_accuracy = BTreeMap::new();
        let mut fused_scores_by_video: BTreeMap<String, (f64, bool)> = BTreeMap::new();
        for (name, members) in fusion_subsets() {
            if !members.iter().all(|g| classifiers.contains_key(g)) {
                continue;
            }
            let mut preds = Vec::new();
            for id in &test_ids {
                let scores: Vec<f64> = members
                    .iter()
                    .map(|g| group_scores[g][*id])
                    .collect();
                let (fused, label) = fuse_median(&scores)?;
                preds.push(((*id).to_string(), label));
                if name == "novelty_plus_value" {
                    fused_scores_by_video.insert((*id).to_string(), (fused, label));
                }
            }
            fused_accuracy.insert(name.to_string(), evaluate_accuracy(&preds, &truth)?);
        }

        // Per-video prediction table.
        let mut csv = String::from("video_id,truth");
        for group in classifiers.keys() {
            csv.push_str(&format!(",{}", group.name()));
        }
        csv.push_str(",fused_score,fused_label\n");
        for id in &test_ids {
            csv.push_str(&format!("{id},{}", if truth[*id] { 1 } else { 0 }));
            for group in classifiers.keys() {
                csv.push_str(&format!(",{}", group_scores[group][*id]));
            }
            match fused_scores_by_video.get(*id) {
                Some((score, label)) => {
                    csv.push_str(&format!(",{score},{}\n", if *label { 1 } else { 0 }))
                }
                None => csv.push_str(",,\n"),
            }
        }
        write_text(
            &out_dir.join(format!("predictions_d{}.csv", manifest.threshold_pct)),
            &csv,
        )?;

        text_report.push_str(&format!(
            "== D-{} ({} test videos, balanced) ==\n",
            manifest.threshold_pct,
            truth.len()
        ));
        for (name, acc) in &group_accuracy {
            text_report.push_str(&format!("{name:<24} {acc:.4}\n"));
        }
        for (name, acc) in &fused_accuracy {
            text_report.push_str(&format!("{name:<24} {acc:.4}\n"));
        }
        text_report.push('\n');

        json_reports.push(VariantReport {
            threshold_pct: manifest.threshold_pct,
            n_test_videos: truth.len(),
            group_accuracy,
            fused_accuracy,
        });
        log_line(&out_dir, &format!("evaluate: D-{} done", manifest.threshold_pct));
    }

    write_text(&out_dir.join("evaluation.txt"), &text_report)?;
    write_text(
        &out_dir.join("evaluation.json"),
        &serde_json::to_string_pretty(&json_reports)?,
    )?;
    print!("{text_report}");
    Ok(EXIT_OK)
}
