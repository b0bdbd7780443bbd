//! Command-line orchestration for feature extraction, novelty fitting,
//! training, evaluation and correlation analysis.

pub mod commands;
pub mod config;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

/// Exit codes: 0 success, 1 partial (some videos skipped), 2 bad
/// configuration or input.
pub const EXIT_OK: i32 = 0;
pub const EXIT_PARTIAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "microvid", version, about = "Micro-video creativity analysis toolkit")]
pub struct Cli {
    /// Experiment configuration file (TOML or JSON); flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive agreement-thresholded labeled datasets from annotations.
    Dataset(commands::dataset::DatasetArgs),
    /// Decode manifest assets and extract feature tables.
    Extract(commands::extract::ExtractArgs),
    /// Fit the background novelty model from extracted features.
    NoveltyFit(commands::novelty_fit::NoveltyFitArgs),
    /// Train per-group classifiers with the balanced split protocol.
    Train(commands::train::TrainArgs),
    /// Evaluate trained model bundles on their test split.
    Evaluate(commands::evaluate::EvaluateArgs),
    /// Correlation analysis of features against labels.
    Analyze(commands::analyze::AnalyzeArgs),
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let file_cfg = match config::FileConfig::load_or_default(cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_CONFIG;
        }
    };
    let result = match cli.command {
        Command::Dataset(args) => commands::dataset::run(args, &file_cfg),
        Command::Extract(args) => commands::extract::run(args, &file_cfg),
        Command::NoveltyFit(args) => commands::novelty_fit::run(args, &file_cfg),
        Command::Train(args) => commands::train::run(args, &file_cfg),
        Command::Evaluate(args) => commands::evaluate::run(args, &file_cfg),
        Command::Analyze(args) => commands::analyze::run(args, &file_cfg),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_CONFIG
        }
    }
}

/// Appends a timestamped line to the run log; timestamps live only here.
pub(crate) fn log_line(out_dir: &std::path::Path, message: &str) {
    use std::io::Write;
    let _ = std::fs::create_dir_all(out_dir);
    let epoch = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    if let Ok(mut f) = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(out_dir.join("run.log"))
    {
        let _ = writeln!(f, "[{epoch}] {message}");
    }
}
