//! `microvid extract`: decode assets and compute feature tables.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use microvid_core::extract::{extract_video, novelty_rows, ExtractionConfig};
use microvid_core::features::FeatureGroup;
use microvid_core::imgproc::GrayImage;
use microvid_core::ingest::{decode_asset, load_manifest, DecodeConfig, MediaManifestEntry};
use microvid_core::novelty::{corpus_mean_spectrum, NoveltyModel};
use microvid_core::sensory::FilmmakingConfig;
use microvid_core::table::{write_text, FeatureTable, FrameTable};

use crate::config::{parse_groups, FileConfig};
use crate::{log_line, EXIT_OK, EXIT_PARTIAL};

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// JSON-lines media manifest.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Output directory for feature tables.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated feature groups (default: all).
    #[arg(long)]
    pub groups: Option<String>,
    /// Worker threads (default: logical cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Skip videos whose rows are already complete in the output tables.
    #[arg(long)]
    pub resume: bool,
    /// Novelty model supplying the mean spectrum and cluster spaces.
    #[arg(long)]
    pub novelty_model: Option<PathBuf>,
    /// Table format: csv (default) or bin.
    #[arg(long)]
    pub format: Option<String>,
}

/// Persisted 64x64 mean spectrum.
#[derive(Serialize, Deserialize)]
pub struct SpectrumFile {
    pub version: u32,
    pub size: usize,
    pub data: Vec<f64>,
}

pub fn write_spectrum(path: &Path, spectrum: &GrayImage) -> Result<()> {
    let file = SpectrumFile {
        version: 1,
        size: spectrum.width(),
        data: spectrum.data().to_vec(),
    };
    write_text(path, &serde_json::to_string(&file)?)?;
    Ok(())
}

pub fn read_spectrum(path: &Path) -> Result<GrayImage> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read spectrum {}", path.display()))?;
    let file: SpectrumFile = serde_json::from_str(&text)?;
    if file.size * file.size != file.data.len() {
        bail!("spectrum file {} has inconsistent size", path.display());
    }
    Ok(GrayImage::from_raw(file.size, file.size, file.data))
}

#[derive(Serialize)]
struct ExtractSummary {
    total: usize,
    completed: usize,
    skipped_resume: usize,
    failures: Vec<(String, String)>,
}

pub fn run(args: ExtractArgs, file_cfg: &FileConfig) -> Result<i32> {
    let manifest_path = args
        .manifest
        .or_else(|| file_cfg.manifest.clone())
        .context("--manifest is required")?;
    let out_dir = args
        .out
        .or_else(|| file_cfg.out.clone())
        .context("--out is required")?;
    let explicit_groups = args.groups.is_some() || file_cfg.groups.is_some();
    let mut groups = parse_groups(args.groups.as_deref(), file_cfg)?;
    let workers = args.workers.or(file_cfg.workers).unwrap_or(0);
    let format = args
        .format
        .or_else(|| file_cfg.format.clone())
        .unwrap_or_else(|| "csv".into());
    if format != "csv" && format != "bin" {
        bail!("--format must be csv or bin, got {format}");
    }

    let novelty_model_path = args.novelty_model.or_else(|| file_cfg.novelty_model.clone());
    let model = match &novelty_model_path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read novelty model {}", p.display()))?;
            Some(NoveltyModel::from_json(&text)?)
        }
        None => None,
    };
    // Without an explicit selection, novelty groups are included only when
    // a model makes them computable.
    if !explicit_groups && model.is_none() {
        groups.retain(|g| {
            !matches!(g, FeatureGroup::NoveltyVisual | FeatureGroup::NoveltyAudio)
        });
    }
    let wants_novelty = groups
        .iter()
        .any(|g| matches!(g, FeatureGroup::NoveltyVisual | FeatureGroup::NoveltyAudio));
    if wants_novelty && model.is_none() {
        bail!("novelty groups requested but no --novelty-model given");
    }

    let decode_cfg = DecodeConfig {
        target_sample_rate: file_cfg.decode.target_sample_rate.unwrap_or(22050),
        decoder_cmd: file_cfg.decode.decoder_cmd.clone(),
        cache_dir: std::env::var_os("MICROVID_CACHE").map(PathBuf::from),
    };
    let extraction_cfg = ExtractionConfig {
        filmmaking: FilmmakingConfig {
            shot_threshold: file_cfg
                .extraction
                .shot_threshold
                .unwrap_or(microvid_core::sensory::SHOT_THRESHOLD),
            change_epsilon: file_cfg
                .extraction
                .change_epsilon
                .unwrap_or(microvid_core::sensory::CHANGE_EPSILON),
        },
        visual_affect_extended: file_cfg.extraction.visual_affect_extended.unwrap_or(false),
        frame_samples: file_cfg
            .extraction
            .frame_samples
            .unwrap_or(microvid_core::learn::FRAME_SAMPLES),
    };

    let manifest = load_manifest(&manifest_path)?;
    std::fs::create_dir_all(&out_dir)?;
    log_line(
        &out_dir,
        &format!("extract: {} manifest entries", manifest.len()),
    );

    let features_path = out_dir.join(if format == "bin" {
        "features.bin"
    } else {
        "features.csv"
    });
    let frames_path = out_dir.join("features_frames.csv");
    let spectrum_path = out_dir.join("mean_spectrum.json");

    // Resume state: videos whose requested rows already exist.
    let mut features = if args.resume && features_path.exists() {
        FeatureTable::read_auto(&features_path)?
    } else {
        FeatureTable::default()
    };
    let mut frames_table = if args.resume && frames_path.exists() {
        FrameTable::read_csv(&frames_path)?
    } else {
        FrameTable::default()
    };
    let complete: BTreeSet<String> = if args.resume {
        manifest
            .iter()
            .filter(|e| {
                groups.iter().all(|g| {
                    let video_ok = features.get(&e.video_id, *g).is_some();
                    let frames_ok = !g.is_frame_level()
                        || frames_table.get(&e.video_id, *g).is_some();
                    video_ok && frames_ok
                })
            })
            .map(|e| e.video_id.clone())
            .collect()
    } else {
        BTreeSet::new()
    };

    let pending: Vec<&MediaManifestEntry> = manifest
        .iter()
        .filter(|e| !complete.contains(&e.video_id))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("cannot build worker pool")?;

    // Decode everything first; the self-corpus spectrum needs middle frames.
    let decoded: Vec<(String, std::result::Result<_, String>)> = pool.install(|| {
        pending
            .par_iter()
            .map(|entry| {
                let result = decode_asset(entry, &decode_cfg).map_err(|e| e.to_string());
                (entry.video_id.clone(), result)
            })
            .collect()
    });

    let mut failures: Vec<(String, String)> = Vec::new();
    let mut assets = Vec::new();
    for (id, result) in decoded {
        match result {
            Ok(asset) => assets.push(asset),
            Err(msg) => failures.push((id, msg)),
        }
    }

    // Uniqueness reference: the model's spectrum when given, the persisted
    // one on resume, otherwise the self-corpus mean over middle frames.
    let spectrum: GrayImage = if let Some(m) = &model {
        m.mean_spectrum_image()
    } else if args.resume && spectrum_path.exists() {
        read_spectrum(&spectrum_path)?
    } else if assets.is_empty() {
        GrayImage::filled(64, 64, 0.0)
    } else {
        corpus_mean_spectrum(assets.iter().map(|a| a.middle_frame()))?
    };

    let extracted: Vec<_> = pool.install(|| {
        assets
            .par_iter()
            .map(|asset| {
                let result =
                    extract_video(asset, &spectrum, &extraction_cfg).map_err(|e| e.to_string());
                (asset.video_id.clone(), result)
            })
            .collect()
    });

    let mut completed = 0usize;
    for (id, result) in extracted {
        match result {
            Ok(vf) => {
                for group in &groups {
                    match group {
                        FeatureGroup::NoveltyVisual | FeatureGroup::NoveltyAudio => {}
                        g if g.is_frame_level() => {
                            features.insert(&id, *g, vf.value.group(*g).unwrap().to_vec());
                            frames_table.insert(&id, *g, vf.frame_rows[g].clone());
                        }
                        g => {
                            features.insert(&id, *g, vf.value.group(*g).unwrap().to_vec());
                        }
                    }
                }
                if wants_novelty {
                    match novelty_rows(&vf.value, model.as_ref().unwrap()) {
                        Ok((visual, audio)) => {
                            if groups.contains(&FeatureGroup::NoveltyVisual) {
                                features.insert(&id, FeatureGroup::NoveltyVisual, visual);
                            }
                            if groups.contains(&FeatureGroup::NoveltyAudio) {
                                features.insert(&id, FeatureGroup::NoveltyAudio, audio);
                            }
                        }
                        Err(e) => {
                            failures.push((id.clone(), e.to_string()));
                            continue;
                        }
                    }
                }
                completed += 1;
            }
            Err(msg) => failures.push((id, msg)),
        }
    }

    if format == "bin" {
        features.write_binary(&features_path)?;
    } else {
        features.write_csv(&features_path)?;
    }
    frames_table.write_csv(&frames_path)?;
    write_spectrum(&spectrum_path, &spectrum)?;

    failures.sort();
    let summary = ExtractSummary {
        total: manifest.len(),
        completed: completed + complete.len(),
        skipped_resume: complete.len(),
        failures: failures.clone(),
    };
    write_text(
        &out_dir.join("extract_summary.json"),
        &serde_json::to_string_pretty(&summary)?,
    )?;
    for (id, msg) in &failures {
        eprintln!("skipped {id}: {msg}");
        log_line(&out_dir, &format!("skipped {id}: {msg}"));
    }
    println!(
        "extracted {} of {} videos ({} failures, {} resumed)",
        summary.completed,
        summary.total,
        failures.len(),
        summary.skipped_resume
    );
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_PARTIAL })
}
