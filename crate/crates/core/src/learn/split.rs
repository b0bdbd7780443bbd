//! Balanced train/test splitting: two thirds of the positives train, and
//! negatives are subsampled to match the positive count in each partition.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::LabeledDataset;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub seed: u64,
    pub train_pos: Vec<String>,
    pub test_pos: Vec<String>,
    pub train_neg: Vec<String>,
    pub test_neg: Vec<String>,
}

impl SplitPlan {
    pub fn train_ids(&self) -> impl Iterator<Item = (&str, bool)> {
        self.train_pos
            .iter()
            .map(|id| (id.as_str(), true))
            .chain(self.train_neg.iter().map(|id| (id.as_str(), false)))
    }

    pub fn test_ids(&self) -> impl Iterator<Item = (&str, bool)> {
        self.test_pos
            .iter()
            .map(|id| (id.as_str(), true))
            .chain(self.test_neg.iter().map(|id| (id.as_str(), false)))
    }
}

/// Shuffles positives by seed and assigns the first `ceil(2P/3)` to
/// training; negatives are drawn without replacement to mirror the positive
/// counts.
pub fn split_dataset(dataset: &LabeledDataset, seed: u64) -> Result<SplitPlan> {
    let mut positives: Vec<String> = dataset
        .entries
        .iter()
        .filter(|(_, label)| *label)
        .map(|(id, _)| id.clone())
        .collect();
    let mut negatives: Vec<String> = dataset
        .entries
        .iter()
        .filter(|(_, label)| !*label)
        .map(|(id, _)| id.clone())
        .collect();
    if positives.len() < 3 {
        return Err(Error::Validation(format!(
            "split needs at least 3 positives, got {}",
            positives.len()
        )));
    }
    if negatives.len() < positives.len() {
        return Err(Error::Validation(format!(
            "insufficient negatives: {} positives but only {} negatives",
            positives.len(),
            negatives.len()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    positives.shuffle(&mut rng);
    negatives.shuffle(&mut rng);

    let p = positives.len();
    let n_train = (2 * p).div_ceil(3);
    let mut train_pos: Vec<String> = positives[..n_train].to_vec();
    let mut test_pos: Vec<String> = positives[n_train..].to_vec();
    let mut train_neg: Vec<String> = negatives[..train_pos.len()].to_vec();
    let mut test_neg: Vec<String> =
        negatives[train_pos.len()..train_pos.len() + test_pos.len()].to_vec();

    train_pos.sort();
    test_pos.sort();
    train_neg.sort();
    test_neg.sort();
    Ok(SplitPlan {
        seed,
        train_pos,
        test_pos,
        train_neg,
        test_neg,
    })
}
