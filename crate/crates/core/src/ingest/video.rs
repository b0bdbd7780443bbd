//! Asset decoding: numbered frame images (or a raw planar file) plus a PCM
//! WAV sidecar become a canonical [`VideoAsset`].

use std::path::{Path, PathBuf};
use std::process::Command;

use crate::audio::AudioClip;
use crate::error::{Error, Result};
use crate::imgproc::Frame;

use super::manifest::MediaManifestEntry;

/// Magic prefix of the raw planar frame-sequence format: 8-byte magic,
/// u32-le width, u32-le height, then per frame three `w*h` planes (R, G, B).
pub const RAW_VIDEO_MAGIC: &[u8; 8] = b"MVRAWv1\0";

/// Default audio rate assets are normalized to.
pub const DEFAULT_TARGET_RATE: u32 = 22050;

/// Decoding options.
#[derive(Debug, Clone)]
pub struct DecodeConfig {
    /// Audio is resampled to this rate.
    pub target_sample_rate: u32,
    /// Optional external decoder template with `{input}` and `{outdir}`
    /// placeholders, invoked when `frames_path` is a container file the
    /// library cannot read directly. The decoder must emit numbered
    /// `frame_*.png` files and, if the manifest's audio path is missing,
    /// an `audio.wav`, into `{outdir}`.
    pub decoder_cmd: Option<String>,
    /// Work area for external decoder output; one subdirectory per video.
    pub cache_dir: Option<PathBuf>,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        DecodeConfig {
            target_sample_rate: DEFAULT_TARGET_RATE,
            decoder_cmd: None,
            cache_dir: None,
        }
    }
}

/// Decoded frames plus mono audio for one video.
#[derive(Debug, Clone)]
pub struct VideoAsset {
    pub video_id: String,
    pub frames: Vec<Frame>,
    pub audio: AudioClip,
}

impl VideoAsset {
    pub fn new(video_id: String, frames: Vec<Frame>, audio: AudioClip) -> Result<Self> {
        if frames.len() < 2 {
            return Err(Error::media(
                &video_id,
                format!("n_frames {} < 2", frames.len()),
            ));
        }
        let (w, h) = (frames[0].width(), frames[0].height());
        for (i, f) in frames.iter().enumerate() {
            if f.width() != w || f.height() != h {
                return Err(Error::media(
                    &video_id,
                    format!(
                        "frame {i} is {}x{}, expected {w}x{h}",
                        f.width(),
                        f.height()
                    ),
                ));
            }
        }
        Ok(VideoAsset {
            video_id,
            frames,
            audio,
        })
    }

    pub fn n_frames(&self) -> usize {
        self.frames.len()
    }

    /// The middle frame, used wherever a single representative frame is
    /// needed.
    pub fn middle_frame(&self) -> &Frame {
        &self.frames[self.frames.len() / 2]
    }
}

/// Evenly spaced frame indices: `floor(i * (N-1) / (n-1))`. A single sample
/// picks the middle frame.
pub fn sample_frame_indices(n_frames: usize, n: usize) -> Vec<usize> {
    assert!(n >= 1 && n_frames >= 1);
    if n == 1 {
        return vec![n_frames / 2];
    }
    (0..n)
        .map(|i| i * (n_frames - 1) / (n - 1))
        .collect()
}

/// The `n` evenly spaced frames of an asset (with repetition when the asset
/// has fewer frames than requested).
pub fn sample_frames(asset: &VideoAsset, n: usize) -> Vec<&Frame> {
    sample_frame_indices(asset.n_frames(), n)
        .into_iter()
        .map(|i| &asset.frames[i])
        .collect()
}

/// Decodes one manifest entry into a [`VideoAsset`].
pub fn decode_asset(entry: &MediaManifestEntry, cfg: &DecodeConfig) -> Result<VideoAsset> {
    let (frames_dir, audio_path) = materialize_media(entry, cfg)?;
    let frames = match frames_dir {
        FrameSource::Directory(dir) => load_frame_directory(&entry.video_id, &dir)?,
        FrameSource::RawFile(file) => load_raw_video(&entry.video_id, &file)?,
    };
    let audio = load_wav(&entry.video_id, &audio_path)?
        .resample_linear(cfg.target_sample_rate)?;
    VideoAsset::new(entry.video_id.clone(), frames, audio)
}

enum FrameSource {
    Directory(PathBuf),
    RawFile(PathBuf),
}

fn materialize_media(
    entry: &MediaManifestEntry,
    cfg: &DecodeConfig,
) -> Result<(FrameSource, PathBuf)> {
    let p = &entry.frames_path;
    if p.is_dir() {
        return Ok((FrameSource::Directory(p.clone()), entry.audio_path.clone()));
    }
    if p.is_file() {
        if is_raw_video(p)? {
            return Ok((FrameSource::RawFile(p.clone()), entry.audio_path.clone()));
        }
        if let Some(cmd) = &cfg.decoder_cmd {
            let outdir = cfg
                .cache_dir
                .clone()
                .unwrap_or_else(std::env::temp_dir)
                .join(&entry.video_id);
            std::fs::create_dir_all(&outdir).map_err(|e| Error::io(&outdir, e))?;
            run_decoder(&entry.video_id, cmd, p, &outdir)?;
            let audio = if entry.audio_path.is_file() {
                entry.audio_path.clone()
            } else {
                outdir.join("audio.wav")
            };
            return Ok((FrameSource::Directory(outdir), audio));
        }
        return Err(Error::media(
            &entry.video_id,
            format!(
                "{} is neither a frame directory nor a raw video file, and no decoder_cmd is configured",
                p.display()
            ),
        ));
    }
    Err(Error::media(
        &entry.video_id,
        format!("frames path {} does not exist", p.display()),
    ))
}

fn is_raw_video(path: &Path) -> Result<bool> {
    use std::io::Read;
    let mut f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut magic = [0u8; 8];
    match f.read_exact(&mut magic) {
        Ok(()) => Ok(&magic == RAW_VIDEO_MAGIC),
        Err(_) => Ok(false),
    }
}

fn run_decoder(video_id: &str, template: &str, input: &Path, outdir: &Path) -> Result<()> {
    let cmd_line = template
        .replace("{input}", &input.to_string_lossy())
        .replace("{outdir}", &outdir.to_string_lossy());
    let status = Command::new("sh")
        .arg("-c")
        .arg(&cmd_line)
        .status()
        .map_err(|e| Error::media(video_id, format!("failed to spawn decoder: {e}")))?;
    if !status.success() {
        return Err(Error::media(
            video_id,
            format!("decoder command failed with {status}: {cmd_line}"),
        ));
    }
    Ok(())
}

/// Loads numbered frame images from a directory, ordered by the numeric
/// index embedded in the file name.
fn load_frame_directory(video_id: &str, dir: &Path) -> Result<Vec<Frame>> {
    let mut indexed: Vec<(u64, PathBuf)> = Vec::new();
    let rd = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    for entry in rd {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        let is_png = path
            .extension()
            .map(|e| e.eq_ignore_ascii_case("png"))
            .unwrap_or(false);
        if !is_png {
            continue;
        }
        let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let digits: String = stem.chars().filter(|c| c.is_ascii_digit()).collect();
        let idx = digits.parse::<u64>().map_err(|_| {
            Error::media(
                video_id,
                format!("frame file {} has no numeric index", path.display()),
            )
        })?;
        indexed.push((idx, path));
    }
    indexed.sort();
    indexed
        .into_iter()
        .map(|(_, path)| load_png_frame(video_id, &path))
        .collect()
}

fn load_png_frame(video_id: &str, path: &Path) -> Result<Frame> {
    let img = image::open(path)
        .map_err(|e| Error::media(video_id, format!("cannot read {}: {e}", path.display())))?
        .into_rgb8();
    Frame::from_rgb8(img.width() as usize, img.height() as usize, img.as_raw())
}

fn load_raw_video(video_id: &str, path: &Path) -> Result<Vec<Frame>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.len() < 16 || &bytes[..8] != RAW_VIDEO_MAGIC {
        return Err(Error::media(video_id, "bad raw video header"));
    }
    let w = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let h = u32::from_le_bytes(bytes[12..16].try_into().unwrap()) as usize;
    let frame_bytes = w * h * 3;
    if frame_bytes == 0 || (bytes.len() - 16) % frame_bytes != 0 {
        return Err(Error::media(
            video_id,
            format!(
                "raw video payload {} not a multiple of {w}x{h} frames",
                bytes.len() - 16
            ),
        ));
    }
    let mut frames = Vec::new();
    for chunk in bytes[16..].chunks_exact(frame_bytes) {
        // Planar R, G, B to interleaved.
        let plane = w * h;
        let mut data = Vec::with_capacity(plane * 3);
        for i in 0..plane {
            data.push(f64::from(chunk[i]) / 255.0);
            data.push(f64::from(chunk[plane + i]) / 255.0);
            data.push(f64::from(chunk[2 * plane + i]) / 255.0);
        }
        frames.push(Frame::new(w, h, data)?);
    }
    Ok(frames)
}

/// Reads a PCM WAV file and mixes it down to a mono clip at its native rate.
pub fn load_wav(video_id: &str, path: &Path) -> Result<AudioClip> {
    let reader = hound::WavReader::open(path)
        .map_err(|e| Error::media(video_id, format!("cannot read {}: {e}", path.display())))?;
    let spec = reader.spec();
    let channels = spec.channels as usize;
    let data: Vec<f64> = match spec.sample_format {
        hound::SampleFormat::Int => {
            let scale = (1i64 << (spec.bits_per_sample - 1)) as f64;
            reader
                .into_samples::<i32>()
                .map(|s| s.map(|v| f64::from(v) / scale))
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::media(video_id, format!("wav decode: {e}")))?
        }
        hound::SampleFormat::Float => reader
            .into_samples::<f32>()
            .map(|s| s.map(f64::from))
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::media(video_id, format!("wav decode: {e}")))?,
    };
    AudioClip::from_interleaved(&data, channels, spec.sample_rate)
}
