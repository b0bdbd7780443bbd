//! Subcommand implementations.

pub mod analyze;
pub mod bundle;
pub mod dataset;
pub mod evaluate;
pub mod extract;
pub mod novelty_fit;
pub mod train;
