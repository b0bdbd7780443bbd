//! Experiment configuration: optional TOML/JSON file merged with CLI flag
//! overrides (flags win, then file values, then built-in defaults).

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use microvid_core::features::FeatureGroup;

/// On-disk configuration; every field is optional so flags can fill gaps.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub manifest: Option<PathBuf>,
    pub annotations: Option<PathBuf>,
    /// Agreement threshold percents, e.g. [100] or [60, 80, 100].
    pub thresholds: Option<Vec<u32>>,
    pub seed: Option<u64>,
    pub groups: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub features: Option<PathBuf>,
    pub novelty_model: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub format: Option<String>,
    pub clusters: Option<usize>,
    #[serde(default)]
    pub hyper: HyperConfig,
    #[serde(default)]
    pub extraction: ExtractionFileConfig,
    #[serde(default)]
    pub decode: DecodeFileConfig,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperConfig {
    pub cost: Option<f64>,
    pub gamma: Option<f64>,
    pub grid_search: Option<bool>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractionFileConfig {
    pub shot_threshold: Option<f64>,
    pub change_epsilon: Option<f64>,
    pub visual_affect_extended: Option<bool>,
    pub frame_samples: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecodeFileConfig {
    pub target_sample_rate: Option<u32>,
    pub decoder_cmd: Option<String>,
}

impl FileConfig {
    /// Loads TOML or JSON based on the file extension.
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let is_json = path
            .extension()
            .map(|e| e.eq_ignore_ascii_case("json"))
            .unwrap_or(false);
        let cfg = if is_json {
            serde_json::from_str(&text)
                .with_context(|| format!("invalid JSON config {}", path.display()))?
        } else {
            toml::from_str(&text)
                .with_context(|| format!("invalid TOML config {}", path.display()))?
        };
        Ok(cfg)
    }

    pub fn load_or_default(path: Option<&Path>) -> Result<FileConfig> {
        match path {
            Some(p) => Self::load(p),
            None => Ok(FileConfig::default()),
        }
    }
}

/// Parses a `60,80,100`-style threshold list into fractions.
pub fn parse_thresholds(arg: Option<&str>, file: &FileConfig) -> Result<Vec<(u32, f64)>> {
    let percents: Vec<u32> = match arg {
        Some(list) => list
            .split(',')
            .map(|p| p.trim().parse::<u32>().context("bad threshold"))
            .collect::<Result<_>>()?,
        None => file.thresholds.clone().unwrap_or_else(|| vec![100]),
    };
    let mut out = Vec::new();
    for pct in percents {
        let fraction = match pct {
            60 => 0.6,
            80 => 0.8,
            100 => 1.0,
            other => bail!("threshold {other} not one of 60, 80, 100"),
        };
        out.push((pct, fraction));
    }
    Ok(out)
}

/// Parses a comma-separated group list; `None` means all seven groups.
pub fn parse_groups(arg: Option<&str>, file: &FileConfig) -> Result<Vec<FeatureGroup>> {
    let names: Option<Vec<String>> = match arg {
        Some(list) => Some(list.split(',').map(|s| s.trim().to_string()).collect()),
        None => file.groups.clone(),
    };
    match names {
        None => Ok(FeatureGroup::ALL.to_vec()),
        Some(names) => {
            let mut groups = Vec::new();
            for name in names {
                let group = FeatureGroup::parse(&name)
                    .map_err(|e| anyhow::anyhow!(e.to_string()))?;
                if !groups.contains(&group) {
                    groups.push(group);
                }
            }
            if groups.is_empty() {
                bail!("empty group selection");
            }
            Ok(groups)
        }
    }
}

/// SHA-256 of the canonical JSON encoding; stamped into model bundles.
pub fn config_hash(cfg: &FileConfig) -> String {
    let canonical = serde_json::to_string(cfg).unwrap_or_default();
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
