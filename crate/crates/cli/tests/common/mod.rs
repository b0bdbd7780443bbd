//! Synthetic corpus generation shared by the CLI integration tests.

use std::path::{Path, PathBuf};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FRAME_SIDE: u32 = 64;

/// One synthetic video recipe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VideoStyle {
    /// Static warm grating, quiet consonant tone: the "creative-like" class.
    CalmWarm,
    /// Per-frame noise, loud clicky audio: the "non-creative" class.
    ShakyLoud,
}

pub struct SynthVideo {
    pub id: String,
    pub style: VideoStyle,
}

/// Writes frames + audio for one video and returns its manifest line paths.
pub fn write_video(
    dir: &Path,
    video: &SynthVideo,
    n_frames: usize,
    audio_seconds: f64,
    rng: &mut ChaCha8Rng,
) -> (PathBuf, PathBuf) {
    let frames_dir = dir.join(format!("{}_frames", video.id));
    std::fs::create_dir_all(&frames_dir).unwrap();
    let audio_path = dir.join(format!("{}.wav", video.id));

    match video.style {
        VideoStyle::CalmWarm => {
            let spacing = 3 + (rng.gen::<u64>() % 3) as u32;
            let brightness = 0.75 + 0.2 * rng.gen::<f64>();
            let warm_g = 0.45 + 0.2 * rng.gen::<f64>();
            let img = grating_frame(spacing, brightness, warm_g);
            // Identical first and last frames: a perfect loop.
            for i in 0..n_frames {
                img.save(frames_dir.join(format!("frame_{i:05}.png"))).unwrap();
            }
            write_tone_wav(&audio_path, audio_seconds, 180.0 + 80.0 * rng.gen::<f64>(), 0.05);
        }
        VideoStyle::ShakyLoud => {
            for i in 0..n_frames {
                let img = noise_frame(rng);
                img.save(frames_dir.join(format!("frame_{i:05}.png"))).unwrap();
            }
            let click_rate = 3.0 + 3.0 * rng.gen::<f64>();
            write_noisy_click_wav(&audio_path, audio_seconds, click_rate, rng);
        }
    }
    (frames_dir, audio_path)
}

fn grating_frame(spacing: u32, brightness: f64, warm_g: f64) -> image::RgbImage {
    image::RgbImage::from_fn(FRAME_SIDE, FRAME_SIDE, move |x, _y| {
        let on = x % spacing == 0;
        let v = if on { brightness } else { brightness * 0.35 };
        image::Rgb([
            (v * 255.0) as u8,
            (v * warm_g * 255.0) as u8,
            (v * 0.15 * 255.0) as u8,
        ])
    })
}

fn noise_frame(rng: &mut ChaCha8Rng) -> image::RgbImage {
    let mut img = image::RgbImage::new(FRAME_SIDE, FRAME_SIDE);
    for px in img.pixels_mut() {
        let n1: f64 = rng.gen();
        let n2: f64 = rng.gen();
        let n3: f64 = rng.gen();
        *px = image::Rgb([
            (0.25 * n1 * 255.0) as u8,
            (0.35 * n2 * 255.0) as u8,
            ((0.3 + 0.6 * n3) * 255.0) as u8,
        ]);
    }
    img
}

pub fn write_tone_wav(path: &Path, seconds: f64, freq: f64, amplitude: f64) {
    let rate = 22050u32;
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec).unwrap();
    let n = (seconds * rate as f64) as usize;
    for i in 0..n {
        let v = amplitude * (2.0 * std::f64::consts::PI * freq * i as f64 / rate as f64).sin();
        writer.write_sample((v * 32767.0) as i16).unwrap();
    }
    writer.finalize().unwrap();
}

fn write_noisy_click_wav(path: &Path, seconds: f64, click_rate: f64, rng: &mut ChaCha8Rng) {
    let rate = 22050u32;
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec).unwrap();
    let n = (seconds * rate as f64) as usize;
    let mut samples: Vec<f64> = (0..n).map(|_| 0.4 * (rng.gen::<f64>() * 2.0 - 1.0)).collect();
    let mut t = 0.1;
    while t < seconds {
        let start = (t * rate as f64) as usize;
        for k in 0..600.min(n.saturating_sub(start)) {
            let decay = 1.0 - k as f64 / 600.0;
            samples[start + k] +=
                0.9 * decay * (2.0 * std::f64::consts::PI * 1500.0 * k as f64 / rate as f64).sin();
        }
        t += 1.0 / click_rate;
    }
    for v in samples {
        writer.write_sample((v.clamp(-0.999, 0.999) * 32767.0) as i16).unwrap();
    }
    writer.finalize().unwrap();
}

/// Builds a manifest file for a set of videos already on disk.
pub fn write_manifest(path: &Path, entries: &[(String, PathBuf, PathBuf)]) {
    let mut out = String::new();
    for (id, frames, audio) in entries {
        out.push_str(&format!(
            "{{\"video_id\":\"{id}\",\"frames_path\":{:?},\"audio_path\":{:?},\"source_tag\":\"random\"}}\n",
            frames.to_string_lossy(),
            audio.to_string_lossy()
        ));
    }
    std::fs::write(path, out).unwrap();
}

/// Annotation CSV where class A videos get positive votes and class B
/// negative; a deterministic fraction gets a 4/1 split (outside D-100).
pub fn write_annotations(path: &Path, videos: &[SynthVideo]) {
    let mut out = String::new();
    for (i, v) in videos.iter().enumerate() {
        let creative = v.style == VideoStyle::CalmWarm;
        let unanimous = i % 10 != 9;
        let votes = match (creative, unanimous) {
            (true, true) => "P,P,P,P,P",
            (true, false) => "P,P,P,P,N",
            (false, true) => "N,N,N,N,N",
            (false, false) => "N,N,N,N,P",
        };
        out.push_str(&format!("{},{votes}\n", v.id));
    }
    std::fs::write(path, out).unwrap();
}

/// Runs the microvid binary with the given arguments; returns (exit code,
/// stdout).
pub fn run_microvid(args: &[&str]) -> (i32, String) {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_microvid"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8_lossy(&output.stdout).into_owned();
    if !output.status.success() {
        eprintln!("stderr: {}", String::from_utf8_lossy(&output.stderr));
    }
    (output.status.code().unwrap_or(-1), stdout)
}
