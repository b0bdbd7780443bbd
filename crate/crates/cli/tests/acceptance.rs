//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test -p microvid-cli --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use microvid_core::analysis::{mpc, pearson, rank_features, GroupMatrix};
use microvid_core::audio::AudioClip;
use microvid_core::audioaffect;
use microvid_core::features::{FeatureGroup, ValueFeatures};
use microvid_core::imgproc::{
    glcm, spectral_residual_saliency, to_gray, Frame, GrayImage, GLCM_LEVELS,
};
use microvid_core::ingest::LabeledDataset;
use microvid_core::learn::{
    fuse_median, predict_video, rbf, split_dataset, train_group_model, train_svm,
    GroupInstances, SplitPlan, SvmConfig, FRAME_SAMPLES,
};
use microvid_core::novelty::fit_novelty_model;
use microvid_core::sensory::{
    extract_composition, loop_distance, movement, stop_motion,
};
use microvid_core::visaffect::color_names;

fn check_runtime(start: Instant, limit_secs: f64, what: &str) {
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < limit_secs,
        "{what} took {elapsed:.1}s, limit {limit_secs}s"
    );
}

fn gray_frame(v: f64) -> Frame {
    Frame::filled(16, 16, [v, v, v]).unwrap()
}

fn asset_of(frames: Vec<Frame>) -> microvid_core::ingest::VideoAsset {
    let audio = AudioClip::new(vec![0.0; 4410], 22050).unwrap();
    microvid_core::ingest::VideoAsset::new("acc".into(), frames, audio).unwrap()
}

fn xorshift(seed: u64) -> impl FnMut() -> f64 {
    let mut state = seed;
    move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[test]
fn acceptance_01_stop_motion_analytic_fixtures() {
    let start = Instant::now();
    // Static video: no changes, S = N_f.
    let static_asset = asset_of((0..30).map(|_| gray_frame(0.5)).collect());
    assert_eq!(stop_motion(&static_asset), 30.0);
    // Every transition changes: S = 1.
    let flicker = asset_of(
        (0..30)
            .map(|i| gray_frame(if i % 2 == 0 { 0.1 } else { 0.9 }))
            .collect(),
    );
    assert_eq!(stop_motion(&flicker), 1.0);
    // Change every third frame: 3 changes, S = 12 / 4 = 3.
    let steps = asset_of((0..12).map(|i| gray_frame(0.25 * (i / 3) as f64)).collect());
    assert_eq!(stop_motion(&steps), 3.0);
    check_runtime(start, 1.0, "criterion 1");
    println!("ACCEPTANCE 01 PASS: stop motion matches the analytic fixtures exactly");
}

#[test]
fn acceptance_02_movement_termwise_oracle() {
    let start = Instant::now();
    let mut frames = Vec::new();
    for step in 0..10 {
        let mut f = Frame::filled(64, 64, [0.0; 3]).unwrap();
        for y in 28..36 {
            for x in (4 + step * 5)..(12 + step * 5) {
                f.set_rgb(x, y, [1.0, 1.0, 1.0]);
            }
        }
        frames.push(f);
    }
    let asset = asset_of(frames.clone());
    let got = movement(&asset);

    // Independent termwise recomputation of the movement sum.
    let maps: Vec<_> = frames.iter().map(spectral_residual_saliency).collect();
    let mut oracle = 0.0;
    for pair in maps.windows(2) {
        let mut sq = 0.0;
        for (a, b) in pair[0].data().iter().zip(pair[1].data()) {
            sq += (a - b) * (a - b);
        }
        oracle += (sq / pair[0].data().len() as f64).sqrt();
    }
    oracle /= frames.len() as f64;
    assert!(
        (got - oracle).abs() < 1e-9,
        "movement {got} vs oracle {oracle}"
    );
    assert!(got > 0.0);
    check_runtime(start, 5.0, "criterion 2");
    println!("ACCEPTANCE 02 PASS: movement matches the termwise oracle within 1e-9");
}

#[test]
fn acceptance_03_loop_extremes_exact() {
    let looped = asset_of(vec![gray_frame(0.4), gray_frame(0.9), gray_frame(0.4)]);
    assert_eq!(loop_distance(&looped), 0.0);
    let black = Frame::filled(16, 16, [0.0; 3]).unwrap();
    let white = Frame::filled(16, 16, [1.0, 1.0, 1.0]).unwrap();
    let open = asset_of(vec![black, white]);
    assert_eq!(loop_distance(&open), 1.0);
    println!("ACCEPTANCE 03 PASS: loop distance is exact at both extremes");
}

/// Brute-force co-occurrence statistics, written independently of the
/// library path.
fn glcm_oracle(gray: &GrayImage, dx: i32, dy: i32) -> [f64; 5] {
    let q = |v: f64| ((v.clamp(0.0, 1.0) * GLCM_LEVELS as f64) as usize).min(GLCM_LEVELS - 1);
    let w = gray.width() as i32;
    let h = gray.height() as i32;
    let mut counts = vec![vec![0.0f64; GLCM_LEVELS]; GLCM_LEVELS];
    let mut total = 0.0;
    for y in 0..h {
        for x in 0..w {
            let (nx, ny) = (x + dx, y + dy);
            if nx < 0 || ny < 0 || nx >= w || ny >= h {
                continue;
            }
            let a = q(gray.get(x as usize, y as usize));
            let b = q(gray.get(nx as usize, ny as usize));
            counts[a][b] += 1.0;
            counts[b][a] += 1.0;
            total += 2.0;
        }
    }
    let mut contrast = 0.0;
    let mut dissimilarity = 0.0;
    let mut energy = 0.0;
    let mut homogeneity = 0.0;
    let mut entropy = 0.0;
    for i in 0..GLCM_LEVELS {
        for j in 0..GLCM_LEVELS {
            let p = counts[i][j] / total;
            let d = i as f64 - j as f64;
            contrast += d * d * p;
            dissimilarity += d.abs() * p;
            energy += p * p;
            homogeneity += p / (1.0 + d * d);
            if p > 0.0 {
                entropy -= p * p.ln();
            }
        }
    }
    [contrast, dissimilarity, energy, homogeneity, entropy]
}

#[test]
fn acceptance_04_invariants_over_random_frames() {
    let start = Instant::now();
    let mut rng = xorshift(0xacce5504);
    let mut random_frame = |side: usize| {
        let data: Vec<f64> = (0..side * side * 3).map(|_| rng()).collect();
        Frame::new(side, side, data).unwrap()
    };

    // The uniqueness reference for the composition checks.
    let reference = microvid_core::imgproc::log_amplitude_spectrum(
        &microvid_core::imgproc::gray_analysis(&random_frame(64)),
    );

    for i in 0..100 {
        let frame = random_frame(64);
        // Saliency maps are unit-sum distributions.
        let map = spectral_residual_saliency(&frame);
        let sum: f64 = map.data().iter().sum();
        assert!((sum - 1.0).abs() < 1e-9, "frame {i}: saliency sum {sum}");
        assert!(map.data().iter().all(|&v| v >= 0.0));

        // Color-name fractions partition the frame.
        let names = color_names(&frame);
        let csum: f64 = names.iter().sum();
        assert!((csum - 1.0).abs() < 1e-9, "frame {i}: color sum {csum}");

        // GLCM statistics against the brute-force oracle on 8x8 frames.
        let small = random_frame(8);
        let gray = to_gray(&small);
        for offset in [(1, 0), (0, 1)] {
            let stats = glcm(&gray, offset).stats();
            let oracle = glcm_oracle(&gray, offset.0, offset.1);
            let got = [
                stats.contrast,
                stats.dissimilarity,
                stats.energy,
                stats.homogeneity,
                stats.entropy,
            ];
            for (g, o) in got.iter().zip(&oracle) {
                assert!((g - o).abs() < 1e-9, "frame {i}: glcm {got:?} vs {oracle:?}");
            }
        }

        // Composition range invariants.
        let comp = extract_composition(&frame, &reference);
        assert!((0.0..=1.0).contains(&comp.rot_h));
        assert!((0.0..=1.0).contains(&comp.rot_s));
        assert!((0.0..=1.0).contains(&comp.rot_v));
        assert!(comp.low_dof.iter().all(|r| (0.0..=1.0).contains(r)));
        assert!((0.0..=1.0).contains(&comp.contrast));
        assert!(comp.symmetry >= 0.0);
        assert!(comp.uniqueness >= 0.0);
        assert!((0.0..=1.0).contains(&comp.order_entropy));
        assert!((0.0..=1.0).contains(&comp.order_complexity));
    }
    check_runtime(start, 30.0, "criterion 4");
    println!("ACCEPTANCE 04 PASS: invariants hold over 100 random frames");
}

#[test]
fn acceptance_05_audio_suite() {
    let start = Instant::now();
    let rate = 22050u32;
    let sine = |freq: f64, amp: f64, secs: f64| -> AudioClip {
        let n = (secs * rate as f64) as usize;
        AudioClip::new(
            (0..n)
                .map(|i| amp * (2.0 * std::f64::consts::PI * freq * i as f64 / rate as f64).sin())
                .collect(),
            rate,
        )
        .unwrap()
    };
    let mix = |clips: &[AudioClip]| -> AudioClip {
        let n = clips.iter().map(AudioClip::len).min().unwrap();
        let scale = 1.0 / clips.len() as f64;
        AudioClip::new(
            (0..n)
                .map(|i| clips.iter().map(|c| c.samples()[i]).sum::<f64>() * scale)
                .collect(),
            rate,
        )
        .unwrap()
    };

    // Full-scale sine: energy 0.5.
    let full = sine(440.0, 1.0, 6.0);
    let energy = audioaffect::total_energy(&full).unwrap();
    assert!((energy - 0.5).abs() < 1e-6, "energy {energy}");

    // 440 Hz sine: 880 crossings per second.
    let zcr = audioaffect::zero_crossing_rate(&full).unwrap();
    assert!((zcr - 880.0).abs() <= 1.0, "zcr {zcr}");

    // Mode signs with recorded fixture magnitudes.
    let c_major = mix(&[sine(261.63, 1.0, 3.0), sine(329.63, 1.0, 3.0), sine(392.0, 1.0, 3.0)]);
    let a_minor = mix(&[sine(220.0, 1.0, 3.0), sine(261.63, 1.0, 3.0), sine(329.63, 1.0, 3.0)]);
    let mode_major = audioaffect::mode_estimate(&c_major).unwrap();
    let mode_minor = audioaffect::mode_estimate(&a_minor).unwrap();
    assert!(mode_major > 0.0, "C major mode {mode_major}");
    assert!(mode_minor < 0.0, "A minor mode {mode_minor}");
    assert!((mode_major - 0.033890).abs() < 1e-3);
    assert!((mode_minor + 0.305881).abs() < 1e-3);

    // Semitone pair is rougher than an octave pair.
    let octave = mix(&[sine(440.0, 1.0, 2.0), sine(880.0, 1.0, 2.0)]);
    let semitone = mix(&[sine(440.0, 1.0, 2.0), sine(466.16, 1.0, 2.0)]);
    let r_oct = audioaffect::roughness(&octave).unwrap();
    let r_semi = audioaffect::roughness(&semitone).unwrap();
    assert!(r_semi > r_oct, "semitone {r_semi} vs octave {r_oct}");

    // 2 Hz click track: onset rate 2.0 +- 0.2.
    let n = 6 * rate as usize;
    let mut samples = vec![0.0; n];
    let mut t = 0.25;
    while t < 6.0 {
        let startpos = (t * rate as f64) as usize;
        for (k, s) in samples[startpos..(startpos + 300).min(n)].iter_mut().enumerate() {
            *s = (1.0 - k as f64 / 300.0)
                * (2.0 * std::f64::consts::PI * 1000.0 * k as f64 / rate as f64).sin();
        }
        t += 0.5;
    }
    let clicks = AudioClip::new(samples, rate).unwrap();
    let onset = audioaffect::onset_rate(&clicks).unwrap();
    assert!((onset - 2.0).abs() <= 0.2, "onset rate {onset}");

    check_runtime(start, 30.0, "criterion 5");
    println!("ACCEPTANCE 05 PASS: audio suite (energy, zcr, mode, roughness, onsets)");
}

/// Deterministic blob centers with pairwise separation >= 10 in every group.
fn blob_centers(group_dim: usize, k: usize) -> Vec<Vec<f64>> {
    (0..k)
        .map(|j| {
            (0..group_dim)
                .map(|d| 10.0 * ((j * 31 + d * 7) % 13) as f64 + 100.0 * j as f64 / k as f64)
                .collect()
        })
        .collect()
}

type BlobCorpus = (Vec<(String, ValueFeatures)>, BTreeMap<FeatureGroup, Vec<Vec<f64>>>);

fn blob_value_features(n: usize, k: usize, seed: u64) -> BlobCorpus {
    let dims: BTreeMap<FeatureGroup, usize> = FeatureGroup::VALUE_GROUPS
        .into_iter()
        .map(|g| (g, g.dim(false)))
        .collect();
    let centers: BTreeMap<FeatureGroup, Vec<Vec<f64>>> = dims
        .iter()
        .map(|(g, &d)| (*g, blob_centers(d, k)))
        .collect();
    let mut rng = xorshift(seed);
    let mut corpus = Vec::new();
    for i in 0..n {
        let blob = i % k;
        let mut draw = |g: FeatureGroup| -> Vec<f64> {
            centers[&g][blob]
                .iter()
                .map(|c| c + 0.01 * (rng() - 0.5))
                .collect()
        };
        corpus.push((
            format!("bg{i:05}"),
            ValueFeatures {
                scene_content: draw(FeatureGroup::SceneContent),
                filmmaking: draw(FeatureGroup::Filmmaking),
                composition: draw(FeatureGroup::Composition),
                visual_affect: draw(FeatureGroup::VisualAffect),
                audio_affect: draw(FeatureGroup::AudioAffect),
            },
        ));
    }
    (corpus, centers)
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Greedy one-to-one matching; blobs are well separated so it is exact.
fn match_sets(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<f64> {
    let mut used = vec![false; b.len()];
    let mut distances = Vec::new();
    for pa in a {
        let (best, dist) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, pb)| (i, euclid(pa, pb)))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        used[best] = true;
        distances.push(dist);
    }
    distances
}

#[test]
fn acceptance_06_novelty_blob_recovery_and_robustness() {
    let start = Instant::now();
    let flat = GrayImage::filled(64, 64, 0.0);
    let k = 10;

    // Recovery: centroids land on the generator means.
    let (corpus, centers) = blob_value_features(1000, k, 0x600d);
    let model = fit_novelty_model(&corpus, &flat, k, 17).unwrap();
    for space in &model.spaces {
        let recovered = space.centroids_raw();
        let truth = &centers[&space.group];
        // Generators are far apart by construction.
        for i in 0..k {
            for j in i + 1..k {
                assert!(euclid(&truth[i], &truth[j]) >= 10.0);
            }
        }
        for d in match_sets(truth, &recovered) {
            assert!(d < 0.05, "{:?} centroid off by {d}", space.group);
        }
    }

    // A centroid point has a zero entry, everything non-negative.
    let probe = ValueFeatures {
        scene_content: model.spaces[0].centroids_raw()[3].clone(),
        filmmaking: model.spaces[1].centroids_raw()[3].clone(),
        composition: model.spaces[2].centroids_raw()[3].clone(),
        visual_affect: model.spaces[3].centroids_raw()[3].clone(),
        audio_affect: model.spaces[4].centroids_raw()[3].clone(),
    };
    let nv = microvid_core::novelty::novelty_vector(&probe, &model).unwrap();
    assert_eq!(nv.visual.len(), 40);
    assert_eq!(nv.audio.len(), 10);
    assert!(nv.visual.iter().chain(&nv.audio).all(|&d| d >= 0.0));
    for gi in 0..4 {
        let own = nv.visual[gi * 10..(gi + 1) * 10]
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        assert!(own < 1e-6, "group {gi} nearest distance {own}");
    }

    // Robustness: corpus sizes 500 and 2000 of the same distribution agree.
    let (corpus_small, _) = blob_value_features(500, k, 0x5eed1);
    let (corpus_large, _) = blob_value_features(2000, k, 0x5eed2);
    let model_small = fit_novelty_model(&corpus_small, &flat, k, 17).unwrap();
    let model_large = fit_novelty_model(&corpus_large, &flat, k, 17).unwrap();
    for (a, b) in model_small.spaces.iter().zip(&model_large.spaces) {
        for d in match_sets(&a.centroids_raw(), &b.centroids_raw()) {
            assert!(d < 0.1, "{:?} refit drift {d}", a.group);
        }
    }

    check_runtime(start, 60.0, "criterion 6");
    println!("ACCEPTANCE 06 PASS: novelty blob recovery, zero self-distance, refit robustness");
}

/// Independent projected-gradient solver for the 10-point dual problem.
fn qp_oracle(x: &[Vec<f64>], y: &[f64], c: f64, gamma: f64) -> (Vec<f64>, f64) {
    let n = x.len();
    let mut kernel = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            kernel[i][j] = rbf(gamma, &x[i], &x[j]);
        }
    }
    let mut alpha = vec![0.0f64; n];
    let eta = 1e-3;
    for _ in 0..400_000 {
        let grad: Vec<f64> = (0..n)
            .map(|i| {
                1.0 - y[i]
                    * (0..n).map(|j| alpha[j] * y[j] * kernel[i][j]).sum::<f64>()
            })
            .collect();
        for i in 0..n {
            alpha[i] += eta * grad[i];
        }
        // Alternating projection onto the box and the equality constraint.
        for _ in 0..60 {
            let drift: f64 = alpha.iter().zip(y).map(|(a, yi)| a * yi).sum::<f64>() / n as f64;
            for (a, yi) in alpha.iter_mut().zip(y) {
                *a -= drift * yi;
            }
            for a in alpha.iter_mut() {
                *a = a.clamp(0.0, c);
            }
        }
    }
    let margin = |t: usize| -> f64 {
        (0..n).map(|j| alpha[j] * y[j] * kernel[t][j]).sum::<f64>()
    };
    let tol = 1e-4;
    let free: Vec<usize> = (0..n)
        .filter(|&t| alpha[t] > tol && alpha[t] < c - tol)
        .collect();
    assert!(!free.is_empty(), "qp fixture must produce free support vectors");
    let b = free.iter().map(|&t| y[t] - margin(t)).sum::<f64>() / free.len() as f64;
    (alpha, b)
}

#[test]
fn acceptance_07_learning_suite_with_qp_oracle() {
    let start = Instant::now();
    let mut rng = xorshift(0x5eed7);
    let mut blob = |cx: f64, cy: f64, n: usize, spread: f64| -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| vec![cx + spread * (rng() - 0.5), cy + spread * (rng() - 0.5)])
            .collect()
    };

    // Separable blobs: perfect training accuracy.
    let mut x = blob(0.0, 0.0, 50, 1.0);
    x.extend(blob(3.0, 3.0, 50, 1.0));
    let y: Vec<f64> = (0..100).map(|i| if i < 50 { -1.0 } else { 1.0 }).collect();
    let model = train_svm(&x, &y, &SvmConfig::default()).unwrap();
    let acc = x
        .iter()
        .zip(&y)
        .filter(|(xi, &yi)| (model.decision(xi) > 0.0) == (yi > 0.0))
        .count() as f64
        / 100.0;
    assert_eq!(acc, 1.0, "separable blob accuracy {acc}");

    // XOR layout with an RBF kernel.
    let mut xx = Vec::new();
    let mut yy = Vec::new();
    for (cx, cy, label) in [
        (0.0, 0.0, 1.0),
        (1.0, 1.0, 1.0),
        (0.0, 1.0, -1.0),
        (1.0, 0.0, -1.0),
    ] {
        xx.extend(blob(cx, cy, 25, 0.4));
        yy.extend(std::iter::repeat_n(label, 25));
    }
    let xor_model = train_svm(
        &xx,
        &yy,
        &SvmConfig {
            gamma: Some(4.0),
            ..SvmConfig::default()
        },
    )
    .unwrap();
    let xor_acc = xx
        .iter()
        .zip(&yy)
        .filter(|(xi, &yi)| (xor_model.decision(xi) > 0.0) == (yi > 0.0))
        .count() as f64
        / xx.len() as f64;
    assert!(xor_acc >= 0.95, "xor accuracy {xor_acc}");

    // 10-point dual solution against the projected-gradient oracle.
    let mut ten = blob(0.0, 0.0, 5, 2.0);
    ten.extend(blob(1.5, 1.5, 5, 2.0));
    let ty: Vec<f64> = (0..10).map(|i| if i < 5 { -1.0 } else { 1.0 }).collect();
    let gamma = 0.5;
    let cfg = SvmConfig {
        gamma: Some(gamma),
        tolerance: 1e-5,
        ..SvmConfig::default()
    };
    let impl_model = train_svm(&ten, &ty, &cfg).unwrap();
    let (oracle_alpha, oracle_b) = qp_oracle(&ten, &ty, 1.0, gamma);
    for (t, point) in ten.iter().enumerate() {
        let oracle_decision: f64 = (0..10)
            .map(|j| oracle_alpha[j] * ty[j] * rbf(gamma, &ten[j], point))
            .sum::<f64>()
            + oracle_b;
        let got = impl_model.decision(point);
        assert!(
            (got - oracle_decision).abs() < 1e-3,
            "point {t}: impl {got} vs oracle {oracle_decision}"
        );
    }

    check_runtime(start, 60.0, "criterion 7");
    println!("ACCEPTANCE 07 PASS: separable blobs, XOR, and QP-oracle agreement");
}

#[test]
fn acceptance_08_protocol_fidelity() {
    // 471 positives split 314/157 with matched negatives.
    let mut entries = Vec::new();
    for i in 0..471 {
        entries.push((format!("p{i:04}"), true));
    }
    for i in 0..1382 {
        entries.push((format!("n{i:04}"), false));
    }
    entries.sort();
    let dataset = LabeledDataset {
        threshold: 1.0,
        entries,
    };
    let plan = split_dataset(&dataset, 3).unwrap();
    assert_eq!(plan.train_pos.len(), 314);
    assert_eq!(plan.test_pos.len(), 157);
    assert_eq!(plan.train_neg.len(), 314);
    assert_eq!(plan.test_neg.len(), 157);

    // Frame expansion counts are exact: 10 train videos -> 120 instances.
    let split = SplitPlan {
        seed: 0,
        train_pos: (0..5).map(|i| format!("p{i}")).collect(),
        test_pos: vec![],
        train_neg: (0..5).map(|i| format!("n{i}")).collect(),
        test_neg: vec![],
    };
    let mut gi = GroupInstances::new(FeatureGroup::Composition);
    let mut rng = xorshift(42);
    for (id, label) in split.train_ids() {
        let base = if label { 1.0 } else { -1.0 };
        gi.by_video.insert(
            id.to_string(),
            (0..FRAME_SAMPLES)
                .map(|_| vec![base + 0.1 * rng(), base - 0.1 * rng()])
                .collect(),
        );
    }
    let total: usize = gi.by_video.values().map(Vec::len).sum();
    assert_eq!(total, 120);

    // Rounded-average micro-examples.
    let clf = train_group_model(&gi, &split, &SvmConfig::default()).unwrap();
    let mut rows: Vec<Vec<f64>> = (0..7).map(|_| vec![1.0, 1.0]).collect();
    rows.extend((0..5).map(|_| vec![-1.0, -1.0]));
    assert!(predict_video(&clf, &rows).unwrap().0, "7/12 rounds to creative");
    let mut rows: Vec<Vec<f64>> = (0..6).map(|_| vec![1.0, 1.0]).collect();
    rows.extend((0..6).map(|_| vec![-1.0, -1.0]));
    assert!(predict_video(&clf, &rows).unwrap().0, "tie rounds up");
    let rows: Vec<Vec<f64>> = (0..12).map(|_| vec![-1.0, -1.0]).collect();
    assert!(!predict_video(&clf, &rows).unwrap().0);

    // Median fusion micro-examples.
    assert_eq!(fuse_median(&[0.2, 0.9, 0.6]).unwrap(), (0.6, true));
    let (m, label) = fuse_median(&[0.2, 0.4]).unwrap();
    assert!((m - 0.3).abs() < 1e-12 && !label);
    assert_eq!(fuse_median(&[0.8]).unwrap(), (0.8, true));

    println!("ACCEPTANCE 08 PASS: split arithmetic, 12x expansion, fusion and rounding rules");
}

#[test]
fn acceptance_09_analysis_identities() {
    // mpc(1-D) equals |pearson| to 1e-12 over 1000 random instances.
    let mut rng = xorshift(0x909);
    for _ in 0..1000 {
        let x: Vec<f64> = (0..30).map(|_| rng()).collect();
        let y: Vec<f64> = (0..30).map(|_| rng()).collect();
        let rows: Vec<Vec<f64>> = x.iter().map(|&v| vec![v]).collect();
        let m = mpc(&rows, &y).unwrap();
        let r = pearson(&x, &y).unwrap().abs();
        assert!((m - r).abs() < 1e-12, "mpc {m} vs |pearson| {r}");
    }

    // Planted correlations 0.3 / 0.2 / 0.1 recovered in order.
    let n = 2000;
    let labels: Vec<f64> = (0..n).map(|i| (i % 2) as f64).collect();
    let z: Vec<f64> = labels.iter().map(|&l| 2.0 * l - 1.0).collect();
    let planted = [0.3, 0.2, 0.1];
    let sqrt12 = 12f64.sqrt();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            planted
                .iter()
                .map(|&rho| rho * z[i] + (1.0 - rho * rho).sqrt() * (rng() - 0.5) * sqrt12)
                .collect()
        })
        .collect();
    let report = rank_features(
        &[GroupMatrix {
            group: FeatureGroup::Composition,
            feature_names: vec!["strong".into(), "medium".into(), "weak".into()],
            rows,
        }],
        &labels,
        &[],
        "synthetic",
    )
    .unwrap();
    let order: Vec<&str> = report.features.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(
        order,
        vec!["composition/strong", "composition/medium", "composition/weak"]
    );
    println!("ACCEPTANCE 09 PASS: mpc identity (1000 instances) and planted-order recovery");
}

#[test]
fn acceptance_10_end_to_end_synthetic_experiment() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let media = root.join("media");
    std::fs::create_dir_all(&media).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xe2e);

    // 200 annotated videos: 100 creative-like (class A), 100 not (class B).
    let mut videos = Vec::new();
    for i in 0..200 {
        let style = if i < 100 {
            VideoStyle::CalmWarm
        } else {
            VideoStyle::ShakyLoud
        };
        videos.push(SynthVideo {
            id: format!("v{i:04}"),
            style,
        });
    }
    let mut main_entries = Vec::new();
    for v in &videos {
        let (frames, audio) = write_video(&media, v, 24, 6.0, &mut rng);
        main_entries.push((v.id.clone(), frames, audio));
    }

    // 100 held-out background videos resembling the common (class B) style.
    let mut bg_entries = Vec::new();
    for i in 0..100 {
        let v = SynthVideo {
            id: format!("bg{i:04}"),
            style: VideoStyle::ShakyLoud,
        };
        let (frames, audio) = write_video(&media, &v, 24, 6.0, &mut rng);
        bg_entries.push((v.id.clone(), frames, audio));
    }

    let main_manifest = root.join("main.jsonl");
    let bg_manifest = root.join("bg.jsonl");
    write_manifest(&main_manifest, &main_entries);
    write_manifest(&bg_manifest, &bg_entries);
    let annotations = root.join("annotations.csv");
    write_annotations(&annotations, &videos);

    // extract backgrounds -> novelty model -> extract main -> train -> evaluate
    let (code, _) = run_microvid(&[
        "extract",
        "--manifest",
        bg_manifest.to_str().unwrap(),
        "--out",
        root.join("bg_features").to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "background extraction");

    let (code, _) = run_microvid(&[
        "novelty-fit",
        "--features",
        root.join("bg_features").to_str().unwrap(),
        "--out",
        root.join("novelty_model.json").to_str().unwrap(),
        "--seed",
        "11",
    ]);
    assert_eq!(code, 0, "novelty fit");

    let (code, _) = run_microvid(&[
        "extract",
        "--manifest",
        main_manifest.to_str().unwrap(),
        "--out",
        root.join("features").to_str().unwrap(),
        "--novelty-model",
        root.join("novelty_model.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "main extraction");

    let (code, stdout) = run_microvid(&[
        "train",
        "--features",
        root.join("features").to_str().unwrap(),
        "--annotations",
        annotations.to_str().unwrap(),
        "--threshold",
        "100",
        "--out",
        root.join("models").to_str().unwrap(),
        "--seed",
        "11",
    ]);
    assert_eq!(code, 0, "train: {stdout}");

    let (code, stdout) = run_microvid(&[
        "evaluate",
        "--model",
        root.join("models").to_str().unwrap(),
        "--features",
        root.join("features").to_str().unwrap(),
        "--out",
        root.join("eval").to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "evaluate: {stdout}");

    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(root.join("eval/evaluation.json")).unwrap(),
    )
    .unwrap();
    let fused = &report[0]["fused_accuracy"];
    let combined = fused["novelty_plus_value"].as_f64().unwrap();
    let aesthetic = fused["all_aesthetic_value"].as_f64().unwrap();
    let novelty = fused["novelty_audio_visual"].as_f64().unwrap();
    println!(
        "  fused accuracies: combined {combined:.3}, aesthetic {aesthetic:.3}, novelty {novelty:.3}"
    );
    println!("  groups: {}", report[0]["group_accuracy"]);
    // Balanced test set: every group must clear the 0.5 baseline.
    for (group, acc) in report[0]["group_accuracy"].as_object().unwrap() {
        assert!(
            acc.as_f64().unwrap() > 0.5,
            "group {group} at or below the balanced baseline"
        );
    }
    assert!(
        combined >= 0.90,
        "combined fused accuracy {combined} below 0.90"
    );
    assert!(
        combined >= aesthetic,
        "combined {combined} below aesthetic family {aesthetic}"
    );
    assert!(
        combined >= novelty,
        "combined {combined} below novelty family {novelty}"
    );

    check_runtime(start, 600.0, "criterion 10");
    println!("ACCEPTANCE 10 PASS: end-to-end synthetic experiment");
}
