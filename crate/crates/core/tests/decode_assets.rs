//! End-to-end decoding of on-disk media fixtures.

use std::path::Path;

use microvid_core::ingest::{
    decode_asset, load_manifest, DecodeConfig, MediaManifestEntry, SourceTag,
};

fn write_png(path: &Path, w: u32, h: u32, shade: u8) {
    let img = image::RgbImage::from_fn(w, h, |x, y| {
        image::Rgb([shade, (x % 256) as u8, (y % 256) as u8])
    });
    img.save(path).unwrap();
}

fn write_wav(path: &Path, rate: u32, channels: u16, samples_per_channel: usize) {
    let spec = hound::WavSpec {
        channels,
        sample_rate: rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec).unwrap();
    for i in 0..samples_per_channel {
        for _c in 0..channels {
            let v = ((i as f64 * 0.01).sin() * 1000.0) as i16;
            writer.write_sample(v).unwrap();
        }
    }
    writer.finalize().unwrap();
}

fn entry(id: &str, frames: &Path, audio: &Path) -> MediaManifestEntry {
    MediaManifestEntry {
        video_id: id.into(),
        frames_path: frames.to_path_buf(),
        audio_path: audio.to_path_buf(),
        source_tag: SourceTag::Random,
    }
}

#[test]
fn thirty_pngs_and_stereo_wav_decode_to_canonical_asset() {
    let dir = tempfile::tempdir().unwrap();
    let frames_dir = dir.path().join("frames");
    std::fs::create_dir(&frames_dir).unwrap();
    for i in 0..30 {
        write_png(&frames_dir.join(format!("frame_{i:05}.png")), 32, 24, i as u8);
    }
    // 6 seconds of stereo 44.1 kHz.
    let wav = dir.path().join("audio.wav");
    write_wav(&wav, 44100, 2, 264_600);

    let asset = decode_asset(
        &entry("v1", &frames_dir, &wav),
        &DecodeConfig::default(),
    )
    .unwrap();
    assert_eq!(asset.n_frames(), 30);
    assert_eq!(asset.audio.sample_rate(), 22050);
    // Independent sample-count check: 264600 * 22050 / 44100 = 132300.
    let expected = (264_600f64 * 22050.0 / 44100.0).round() as usize;
    assert_eq!(asset.audio.len(), expected);
    assert_eq!(asset.audio.len(), 132_300);
    // Frames ordered by filename index.
    assert!((asset.frames[7].rgb(0, 0)[0] - 7.0 / 255.0).abs() < 1e-12);
}

#[test]
fn mono_22050_wav_passes_through_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    let frames_dir = dir.path().join("frames");
    std::fs::create_dir(&frames_dir).unwrap();
    for i in 0..2 {
        write_png(&frames_dir.join(format!("frame_{i:05}.png")), 16, 16, 0);
    }
    let wav = dir.path().join("audio.wav");
    write_wav(&wav, 22050, 1, 22_050);

    let asset = decode_asset(&entry("v", &frames_dir, &wav), &DecodeConfig::default()).unwrap();
    // Same values a direct i16 -> f64 conversion produces.
    let direct: Vec<f64> = (0..22_050)
        .map(|i| f64::from(((i as f64 * 0.01).sin() * 1000.0) as i16) / 32768.0)
        .collect();
    assert_eq!(asset.audio.samples(), direct.as_slice());
}

#[test]
fn single_frame_directory_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let frames_dir = dir.path().join("frames");
    std::fs::create_dir(&frames_dir).unwrap();
    write_png(&frames_dir.join("frame_00000.png"), 16, 16, 0);
    let wav = dir.path().join("audio.wav");
    write_wav(&wav, 22050, 1, 100);

    let err = decode_asset(&entry("v", &frames_dir, &wav), &DecodeConfig::default())
        .unwrap_err()
        .to_string();
    assert!(err.contains("n_frames 1 < 2"), "{err}");
}

#[test]
fn mixed_frame_dimensions_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let frames_dir = dir.path().join("frames");
    std::fs::create_dir(&frames_dir).unwrap();
    write_png(&frames_dir.join("frame_00000.png"), 16, 16, 0);
    write_png(&frames_dir.join("frame_00001.png"), 24, 16, 0);
    let wav = dir.path().join("audio.wav");
    write_wav(&wav, 22050, 1, 100);

    assert!(decode_asset(&entry("v", &frames_dir, &wav), &DecodeConfig::default()).is_err());
}

#[test]
fn external_decoder_template_is_invoked_for_container_files() {
    let dir = tempfile::tempdir().unwrap();
    // A "container" file the library cannot parse.
    let container = dir.path().join("clip.bin");
    std::fs::write(&container, b"opaque").unwrap();
    let wav = dir.path().join("audio.wav");
    write_wav(&wav, 22050, 1, 1000);

    // Pre-render frames the fake decoder will copy into place.
    let staged = dir.path().join("staged");
    std::fs::create_dir(&staged).unwrap();
    for i in 0..3 {
        write_png(&staged.join(format!("frame_{i:05}.png")), 16, 16, i as u8 * 3);
    }

    let cfg = DecodeConfig {
        decoder_cmd: Some(format!("cp {}/*.png {{outdir}}/", staged.display())),
        cache_dir: Some(dir.path().join("cache")),
        ..DecodeConfig::default()
    };
    let asset = decode_asset(&entry("vx", &container, &wav), &cfg).unwrap();
    assert_eq!(asset.n_frames(), 3);
}

#[test]
fn raw_planar_file_decodes_through_the_manifest_path() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("clip.rawv");
    let (w, h) = (16u32, 16u32);
    let mut bytes = Vec::new();
    bytes.extend_from_slice(microvid_core::ingest::RAW_VIDEO_MAGIC);
    bytes.extend_from_slice(&w.to_le_bytes());
    bytes.extend_from_slice(&h.to_le_bytes());
    for frame in 0..4u8 {
        for _plane in 0..3 {
            bytes.extend(std::iter::repeat_n(frame * 40, (w * h) as usize));
        }
    }
    std::fs::write(&raw, &bytes).unwrap();
    let wav = dir.path().join("audio.wav");
    write_wav(&wav, 22050, 1, 1000);

    let asset = decode_asset(&entry("vraw", &raw, &wav), &DecodeConfig::default()).unwrap();
    assert_eq!(asset.n_frames(), 4);
    assert_eq!(asset.frames[0].width(), 16);
    assert!((asset.frames[2].rgb(3, 3)[1] - 80.0 / 255.0).abs() < 1e-12);
}

#[test]
fn manifest_loading_accepts_roundtripped_entries() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("manifest.jsonl");
    let entries = vec![
        entry("a", Path::new("frames/a"), Path::new("a.wav")),
        entry("b", Path::new("frames/b"), Path::new("b.wav")),
    ];
    let lines: Vec<String> = entries
        .iter()
        .map(|e| serde_json::to_string(e).unwrap())
        .collect();
    std::fs::write(&path, lines.join("\n")).unwrap();
    assert_eq!(load_manifest(&path).unwrap(), entries);
}
