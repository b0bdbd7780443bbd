//! `microvid analyze`: correlation of features with creative labels.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;

use microvid_core::analysis::{rank_features, GroupMatrix};
use microvid_core::features::FeatureGroup;
use microvid_core::ingest::{derive_dataset, load_annotations};
use microvid_core::table::write_text;

use crate::commands::train::load_tables;
use crate::config::{parse_groups, parse_thresholds, FileConfig};
use crate::{log_line, EXIT_OK};

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Directory produced by `extract`.
    #[arg(long)]
    pub features: Option<PathBuf>,
    /// Annotation CSV.
    #[arg(long)]
    pub annotations: Option<PathBuf>,
    /// Agreement threshold percent(s).
    #[arg(long)]
    pub threshold: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Groups to analyze (default: all present in the table).
    #[arg(long)]
    pub groups: Option<String>,
    /// Groups excluded from the per-feature ranking (group MPC still
    /// reported). Default: scene_content,novelty_visual,novelty_audio.
    #[arg(long)]
    pub exclude: Option<String>,
}

pub fn run(args: AnalyzeArgs, file_cfg: &FileConfig) -> Result<i32> {
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
    let thresholds = parse_thresholds(args.threshold.as_deref(), file_cfg)?;
    let groups = parse_groups(args.groups.as_deref(), file_cfg)?;
    let excluded: Vec<FeatureGroup> = match args.exclude.as_deref() {
        Some(list) => list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| FeatureGroup::parse(s.trim()).map_err(|e| anyhow::anyhow!(e.to_string())))
            .collect::<Result<_>>()?,
        None => vec![
            FeatureGroup::SceneContent,
            FeatureGroup::NoveltyVisual,
            FeatureGroup::NoveltyAudio,
        ],
    };

    let (features, _frames) = load_tables(&features_dir)?;
    let records = load_annotations(&annotations_path)?;
    std::fs::create_dir_all(&out_dir)?;

    let extended = file_cfg.extraction.visual_affect_extended.unwrap_or(false);
    for (pct, fraction) in thresholds {
        let dataset = derive_dataset(&records, fraction)?;
        // Keep labeled videos with every requested group present.
        let mut ids = Vec::new();
        let mut labels = Vec::new();
        for (id, label) in &dataset.entries {
            if groups.iter().all(|g| features.get(id, *g).is_some()) {
                ids.push(id.clone());
                labels.push(if *label { 1.0 } else { 0.0 });
            }
        }
        if ids.len() < 2 {
            bail!("D-{pct}: fewer than 2 labeled videos with features");
        }

        let mut matrices = Vec::new();
        for &group in &groups {
            let rows: Vec<Vec<f64>> = ids
                .iter()
                .map(|id| features.get(id, group).unwrap().to_vec())
                .collect();
            matrices.push(GroupMatrix {
                group,
                feature_names: group.feature_names(extended),
                rows,
            });
        }
        let report = rank_features(&matrices, &labels, &excluded, &format!("d{pct}"))?;
        write_text(
            &out_dir.join(format!("correlation_features_d{pct}.csv")),
            &report.to_feature_csv(),
        )?;
        write_text(
            &out_dir.join(format!("correlation_groups_d{pct}.json")),
            &report.to_group_json()?,
        )?;
        write_text(
            &out_dir.join(format!("correlation_plot_d{pct}.tsv")),
            &report.to_plot_data(),
        )?;
        log_line(&out_dir, &format!("analyze: D-{pct} over {} videos", ids.len()));
        println!("D-{pct}: analyzed {} videos, {} groups", ids.len(), groups.len());
        for (group, mpc) in &report.group_mpc {
            println!("  MPC {:<16} {mpc:.4}", group.name());
        }
    }
    Ok(EXIT_OK)
}
