//! `microvid dataset`: aggregate annotations into labeled datasets.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;

use microvid_core::ingest::{derive_dataset, load_annotations};
use microvid_core::table::write_text;

use crate::config::{parse_thresholds, FileConfig};
use crate::{EXIT_OK, log_line};

#[derive(Debug, Args)]
pub struct DatasetArgs {
    /// Annotation CSV (video_id,vote1..vote5 with votes P/N/U).
    #[arg(long)]
    pub annotations: Option<PathBuf>,
    /// Agreement threshold percent(s), comma separated: 60, 80, 100.
    #[arg(long)]
    pub threshold: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: DatasetArgs, file_cfg: &FileConfig) -> Result<i32> {
    let annotations_path = args
        .annotations
        .or_else(|| file_cfg.annotations.clone())
        .context("--annotations is required")?;
    let out_dir = args
        .out
        .or_else(|| file_cfg.out.clone())
        .context("--out is required")?;
    let thresholds = parse_thresholds(args.threshold.as_deref(), file_cfg)?;

    let records = load_annotations(&annotations_path)?;
    std::fs::create_dir_all(&out_dir)?;
    log_line(&out_dir, &format!("dataset: {} annotation records", records.len()));

    for (pct, fraction) in thresholds {
        let dataset = derive_dataset(&records, fraction)?;
        let mut csv = String::from("video_id,label\n");
        for (id, label) in &dataset.entries {
            csv.push_str(&format!("{id},{}\n", if *label { 1 } else { 0 }));
        }
        let path = out_dir.join(format!("dataset_d{pct}.csv"));
        write_text(&path, &csv)?;
        println!(
            "D-{pct}: {} creative / {} non-creative ({} total)",
            dataset.n_creative(),
            dataset.n_non_creative(),
            dataset.entries.len()
        );
    }
    Ok(EXIT_OK)
}
