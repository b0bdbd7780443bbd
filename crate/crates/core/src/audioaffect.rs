//! Audio emotional-affect features: loudness (overall and short-time
//! energy), major/minor mode, roughness, onset rate and zero-crossing rate.

use crate::audio::AudioClip;
use crate::error::{Error, Result};
use crate::fft::fft1d_forward;

/// STFT analysis frame length in samples.
pub const FRAME_SIZE: usize = 4096;
/// STFT hop in samples.
pub const HOP_SIZE: usize = 2048;

/// Short-time energy window and hop, in seconds.
pub const STE_WINDOW_SECONDS: f64 = 2.0;
pub const STE_HOP_SECONDS: f64 = 1.0;

/// Spectral peaks below this fraction of the frame maximum are ignored.
const PEAK_FRACTION: f64 = 0.01;

/// Onset detection runs on its own finer STFT so the +-0.5 s neighborhood
/// holds enough frames for stable peak statistics.
pub const ONSET_FRAME_SIZE: usize = 1024;
pub const ONSET_HOP_SIZE: usize = 256;

/// Onset peak-picking: local z-score threshold and neighborhood half-width.
const ONSET_SIGMA: f64 = 1.5;
const ONSET_NEIGHBORHOOD_SECONDS: f64 = 0.5;
/// Absolute spectral-flux floor; filters numerical dust on digital silence.
const FLUX_FLOOR: f64 = 1e-6;
/// Stationarity gate: an onset must carry at least this fraction of the
/// arriving frame's total magnitude, which suppresses window-phase leakage
/// wiggle on steady tones.
const FLUX_GATE: f64 = 0.02;

/// Krumhansl-Kessler major key profile, C first.
pub const KEY_PROFILE_MAJOR: [f64; 12] = [
    6.35, 2.23, 3.48, 2.33, 4.38, 4.09, 2.52, 5.19, 2.39, 3.66, 2.29, 2.88,
];
/// Krumhansl-Kessler minor key profile, C first.
pub const KEY_PROFILE_MINOR: [f64; 12] = [
    6.33, 2.68, 3.52, 5.38, 2.60, 3.53, 2.54, 4.75, 3.98, 2.69, 3.34, 3.17,
];

/// Frequency range mapped into the chromagram.
const CHROMA_FMIN: f64 = 60.0;
const CHROMA_FMAX: f64 = 4000.0;

/// The 6-dimensional audio affect vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AudioAffectVec {
    pub total_energy: f64,
    pub short_time_energy: f64,
    pub mode: f64,
    pub roughness: f64,
    pub onset_rate: f64,
    pub zcr: f64,
}

impl AudioAffectVec {
    pub const DIM: usize = 6;

    pub fn to_vec(&self) -> Vec<f64> {
        vec![
            self.total_energy,
            self.short_time_energy,
            self.mode,
            self.roughness,
            self.onset_rate,
            self.zcr,
        ]
    }
}

/// Extracts all six features from one clip.
pub fn extract(clip: &AudioClip) -> Result<AudioAffectVec> {
    Ok(AudioAffectVec {
        total_energy: total_energy(clip)?,
        short_time_energy: short_time_energy(clip)?,
        mode: mode_estimate(clip)?,
        roughness: roughness(clip)?,
        onset_rate: onset_rate(clip)?,
        zcr: zero_crossing_rate(clip)?,
    })
}

/// Mean squared sample value over the whole clip.
pub fn total_energy(clip: &AudioClip) -> Result<f64> {
    if clip.is_empty() {
        return Err(Error::Validation("total_energy of empty clip".into()));
    }
    let sum: f64 = clip.samples().iter().map(|x| x * x).sum();
    Ok(sum / clip.len() as f64)
}

/// Mean of per-window mean-square energy over 2 s windows with 1 s hop; a
/// trailing partial window is included when the full windows do not reach
/// the end of the clip.
pub fn short_time_energy(clip: &AudioClip) -> Result<f64> {
    if clip.is_empty() {
        return Err(Error::Validation("short_time_energy of empty clip".into()));
    }
    let win = ((STE_WINDOW_SECONDS * clip.sample_rate() as f64) as usize).max(1);
    let hop = ((STE_HOP_SECONDS * clip.sample_rate() as f64) as usize).max(1);
    let samples = clip.samples();
    let mut energies = Vec::new();
    let mut start = 0;
    while start + win <= samples.len() {
        energies.push(mean_square(&samples[start..start + win]));
        start += hop;
    }
    let covered = if energies.is_empty() {
        0
    } else {
        (energies.len() - 1) * hop + win
    };
    if covered < samples.len() && start < samples.len() {
        energies.push(mean_square(&samples[start..]));
    }
    Ok(energies.iter().sum::<f64>() / energies.len() as f64)
}

fn mean_square(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64
}

/// Sign changes per second.
pub fn zero_crossing_rate(clip: &AudioClip) -> Result<f64> {
    if clip.is_empty() {
        return Err(Error::Validation("zcr of empty clip".into()));
    }
    let crossings = clip
        .samples()
        .windows(2)
        .filter(|w| w[0] * w[1] < 0.0)
        .count();
    Ok(crossings as f64 / clip.duration_seconds())
}

/// Hann-windowed magnitude spectra (bins 0..=frame/2), scaled so a
/// full-scale sinusoid peaks near 1.
fn magnitude_frames_with(
    clip: &AudioClip,
    frame_size: usize,
    hop_size: usize,
) -> Result<Vec<Vec<f64>>> {
    if clip.len() < frame_size {
        return Err(Error::Validation(format!(
            "clip of {} samples shorter than one analysis frame ({frame_size})",
            clip.len()
        )));
    }
    let window: Vec<f64> = (0..frame_size)
        .map(|n| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * n as f64 / frame_size as f64).cos()))
        .collect();
    let scale = 4.0 / frame_size as f64;
    let samples = clip.samples();
    let mut frames = Vec::new();
    let mut start = 0;
    while start + frame_size <= samples.len() {
        let buf: Vec<f64> = samples[start..start + frame_size]
            .iter()
            .zip(&window)
            .map(|(x, w)| x * w)
            .collect();
        let spectrum = fft1d_forward(&buf);
        frames.push(
            spectrum[..=frame_size / 2]
                .iter()
                .map(|c| c.norm() * scale)
                .collect(),
        );
        start += hop_size;
    }
    Ok(frames)
}

fn magnitude_frames(clip: &AudioClip) -> Result<Vec<Vec<f64>>> {
    magnitude_frames_with(clip, FRAME_SIZE, HOP_SIZE)
}

#[inline]
fn bin_frequency(bin: usize, sample_rate: u32) -> f64 {
    bin as f64 * sample_rate as f64 / FRAME_SIZE as f64
}

/// Time-averaged 12-bin chromagram (C = index 0), A4 = 440 Hz.
fn mean_chroma(frames: &[Vec<f64>], sample_rate: u32) -> [f64; 12] {
    let mut chroma = [0.0f64; 12];
    for mags in frames {
        for (bin, &mag) in mags.iter().enumerate().skip(1) {
            let f = bin_frequency(bin, sample_rate);
            if !(CHROMA_FMIN..=CHROMA_FMAX).contains(&f) {
                continue;
            }
            let midi = 69.0 + 12.0 * (f / 440.0).log2();
            let pc = (midi.round() as i64).rem_euclid(12) as usize;
            chroma[pc] += mag;
        }
    }
    for v in chroma.iter_mut() {
        *v /= frames.len().max(1) as f64;
    }
    chroma
}

fn pearson12(a: &[f64; 12], b: &[f64; 12]) -> f64 {
    let ma = a.iter().sum::<f64>() / 12.0;
    let mb = b.iter().sum::<f64>() / 12.0;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for i in 0..12 {
        let da = a[i] - ma;
        let db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if va <= 0.0 || vb <= 0.0 {
        return 0.0;
    }
    cov / (va * vb).sqrt()
}

fn key_strength(chroma: &[f64; 12], tonic: usize, profile: &[f64; 12]) -> f64 {
    let mut rotated = [0.0f64; 12];
    for (i, slot) in rotated.iter_mut().enumerate() {
        *slot = chroma[(tonic + i) % 12];
    }
    pearson12(&rotated, profile)
}

/// Major-versus-minor mode indicator from key strengths.
///
/// Key strength is the Pearson correlation of the time-averaged chroma with
/// a rotated Krumhansl-Kessler profile. Summing raw strength differences
/// over all 12 tonics cancels exactly (correlations against every rotation
/// of a profile sum to zero), so the indicator contrasts the strongest major
/// key against the strongest minor key. Positive values lean major,
/// negative minor; silence maps to 0.
pub fn mode_estimate(clip: &AudioClip) -> Result<f64> {
    let frames = magnitude_frames(clip)?;
    let chroma = mean_chroma(&frames, clip.sample_rate());
    let best_major = (0..12)
        .map(|k| key_strength(&chroma, k, &KEY_PROFILE_MAJOR))
        .fold(f64::MIN, f64::max);
    let best_minor = (0..12)
        .map(|k| key_strength(&chroma, k, &KEY_PROFILE_MINOR))
        .fold(f64::MIN, f64::max);
    Ok(best_major - best_minor)
}

/// Spectral peaks of one frame: local maxima at or above 1% of the frame
/// maximum. Returns (frequency, amplitude) pairs.
fn spectral_peaks(mags: &[f64], sample_rate: u32) -> Vec<(f64, f64)> {
    let max = mags.iter().cloned().fold(0.0f64, f64::max);
    if max <= 0.0 {
        return Vec::new();
    }
    let floor = PEAK_FRACTION * max;
    let mut peaks = Vec::new();
    for bin in 1..mags.len() - 1 {
        let m = mags[bin];
        if m >= floor && m > mags[bin - 1] && m > mags[bin + 1] {
            peaks.push((bin_frequency(bin, sample_rate), m));
        }
    }
    peaks
}

fn plomp_levelt(f1: f64, a1: f64, f2: f64, a2: f64) -> f64 {
    let fmin = f1.min(f2);
    let s = 0.24 / (0.021 * fmin + 19.0);
    let df = (f1 - f2).abs();
    a1 * a2 * ((-3.5 * s * df).exp() - (-5.75 * s * df).exp())
}

/// Mean over frames of summed pairwise Plomp-Levelt dissonance between
/// spectral peaks. Frames with fewer than two peaks contribute 0.
pub fn roughness(clip: &AudioClip) -> Result<f64> {
    let frames = magnitude_frames(clip)?;
    let mut total = 0.0;
    for mags in &frames {
        let peaks = spectral_peaks(mags, clip.sample_rate());
        let mut frame_sum = 0.0;
        for i in 0..peaks.len() {
            for j in i + 1..peaks.len() {
                frame_sum += plomp_levelt(peaks[i].0, peaks[i].1, peaks[j].0, peaks[j].1);
            }
        }
        total += frame_sum;
    }
    Ok(total / frames.len() as f64)
}

/// Onset events per second from half-wave rectified spectral flux with
/// adaptive local thresholding. A flux peak counts as an onset when it is a
/// local maximum, exceeds the local mean by 1.5 standard deviations over a
/// +-0.5 s neighborhood, and passes the stationarity gate.
pub fn onset_rate(clip: &AudioClip) -> Result<f64> {
    let frames = magnitude_frames_with(clip, ONSET_FRAME_SIZE, ONSET_HOP_SIZE)?;
    if frames.len() < 2 {
        return Ok(0.0);
    }
    let flux: Vec<f64> = frames
        .windows(2)
        .map(|w| {
            w[1].iter()
                .zip(&w[0])
                .map(|(cur, prev)| (cur - prev).max(0.0))
                .sum()
        })
        .collect();
    let arriving: Vec<f64> = frames[1..]
        .iter()
        .map(|mags| mags.iter().sum::<f64>())
        .collect();

    let frames_per_second = clip.sample_rate() as f64 / ONSET_HOP_SIZE as f64;
    let radius = ((ONSET_NEIGHBORHOOD_SECONDS * frames_per_second) as usize).max(1);
    let mut count = 0usize;
    for t in 0..flux.len() {
        let left = if t > 0 { flux[t - 1] } else { f64::MIN };
        let right = if t + 1 < flux.len() { flux[t + 1] } else { f64::MIN };
        let gate = FLUX_FLOOR.max(FLUX_GATE * arriving[t]);
        if flux[t] < left || flux[t] < right || flux[t] <= gate {
            continue;
        }
        let lo = t.saturating_sub(radius);
        let hi = (t + radius + 1).min(flux.len());
        let window = &flux[lo..hi];
        let mean = window.iter().sum::<f64>() / window.len() as f64;
        let var = window.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / window.len() as f64;
        if flux[t] > mean + ONSET_SIGMA * var.sqrt() {
            count += 1;
        }
    }
    Ok(count as f64 / clip.duration_seconds())
}
