//! Mono audio clips and deterministic resampling.

use crate::error::{Error, Result};

/// Mono PCM clip with samples in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioClip {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl AudioClip {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::Validation("audio sample rate must be > 0".into()));
        }
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    /// Mixes interleaved multi-channel samples down to mono by channel
    /// average.
    pub fn from_interleaved(data: &[f64], channels: usize, sample_rate: u32) -> Result<Self> {
        if channels == 0 {
            return Err(Error::Validation("audio must have >= 1 channel".into()));
        }
        if !data.len().is_multiple_of(channels) {
            return Err(Error::Validation(format!(
                "interleaved buffer length {} not divisible by {} channels",
                data.len(),
                channels
            )));
        }
        if channels == 1 {
            return Self::new(data.to_vec(), sample_rate);
        }
        let samples = data
            .chunks_exact(channels)
            .map(|frame| frame.iter().sum::<f64>() / channels as f64)
            .collect();
        Self::new(samples, sample_rate)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_seconds(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    /// Linear-interpolation resampling. A clip already at the target rate is
    /// returned unchanged, bit for bit.
    pub fn resample_linear(&self, target_rate: u32) -> Result<AudioClip> {
        if target_rate == 0 {
            return Err(Error::Validation("target sample rate must be > 0".into()));
        }
        if target_rate == self.sample_rate || self.samples.is_empty() {
            return Ok(AudioClip {
                samples: self.samples.clone(),
                sample_rate: target_rate,
            });
        }
        let ratio = target_rate as f64 / self.sample_rate as f64;
        let out_len = ((self.samples.len() as f64) * ratio).round().max(1.0) as usize;
        let step = self.sample_rate as f64 / target_rate as f64;
        let last = self.samples.len() - 1;
        let samples = (0..out_len)
            .map(|i| {
                let pos = i as f64 * step;
                let i0 = (pos.floor() as usize).min(last);
                let frac = pos - i0 as f64;
                let i1 = (i0 + 1).min(last);
                self.samples[i0] * (1.0 - frac) + self.samples[i1] * frac
            })
            .collect();
        Ok(AudioClip {
            samples,
            sample_rate: target_rate,
        })
    }
}
