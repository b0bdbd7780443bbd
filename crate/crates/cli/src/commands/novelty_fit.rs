//! `microvid novelty-fit`: cluster the background attribute spaces.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;

use microvid_core::features::{FeatureGroup, ValueFeatures};
use microvid_core::novelty::{fit_novelty_model, DEFAULT_K};
use microvid_core::table::{write_text, FeatureTable};

use crate::commands::extract::read_spectrum;
use crate::config::FileConfig;
use crate::{log_line, EXIT_OK};

#[derive(Debug, Args)]
pub struct NoveltyFitArgs {
    /// Directory produced by `extract` over the background manifest
    /// (contains features.csv/bin and mean_spectrum.json).
    #[arg(long)]
    pub features: Option<PathBuf>,
    /// Output model file (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Clusters per attribute space.
    #[arg(long)]
    pub clusters: Option<usize>,
}

pub fn run(args: NoveltyFitArgs, file_cfg: &FileConfig) -> Result<i32> {
    let features_dir = args
        .features
        .or_else(|| file_cfg.features.clone())
        .context("--features is required")?;
    let out_path = args
        .out
        .or_else(|| file_cfg.out.clone())
        .context("--out is required")?;
    let seed = args.seed.or(file_cfg.seed).unwrap_or(0);
    let k = args.clusters.or(file_cfg.clusters).unwrap_or(DEFAULT_K);

    let features_path = ["features.csv", "features.bin"]
        .iter()
        .map(|name| features_dir.join(name))
        .find(|p| p.exists())
        .with_context(|| format!("no feature table under {}", features_dir.display()))?;
    let table = FeatureTable::read_auto(&features_path)?;
    let spectrum = read_spectrum(&features_dir.join("mean_spectrum.json"))?;

    let mut background = Vec::new();
    for id in table.video_ids() {
        let mut rows = Vec::new();
        for group in FeatureGroup::VALUE_GROUPS {
            match table.get(&id, group) {
                Some(row) => rows.push(row.to_vec()),
                None => bail!(
                    "video {id} lacks the {} group required for clustering",
                    group.name()
                ),
            }
        }
        let mut it = rows.into_iter();
        background.push((
            id,
            ValueFeatures {
                scene_content: it.next().unwrap(),
                filmmaking: it.next().unwrap(),
                composition: it.next().unwrap(),
                visual_affect: it.next().unwrap(),
                audio_affect: it.next().unwrap(),
            },
        ));
    }

    let model = fit_novelty_model(&background, &spectrum, k, seed)?;
    if let Some(parent) = out_path.parent() {
        if !parent.as_os_str().is_empty() {
            log_line(parent, &format!("novelty-fit: corpus {} k {k} seed {seed}", background.len()));
        }
    }
    write_text(&out_path, &model.to_json()?)?;
    println!(
        "novelty model: {} videos, {k} clusters per space, seed {seed} -> {}",
        background.len(),
        out_path.display()
    );
    Ok(EXIT_OK)
}
