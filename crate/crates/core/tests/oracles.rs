//! Arc model, splatting and metrics checked against independent references.

mod common;

use std::f64::consts::PI;

use arcvfi::arc::pixel_displacement;
use arcvfi::metrics;
use arcvfi::scene::{Pattern, Texture};
use arcvfi::*;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rotation_scene(w: usize, h: usize, center: (f64, f64), omega: f64) -> SceneSpec {
    SceneSpec {
        width: w,
        height: h,
        motion: Motion::Rotation { center, omega },
        texture: Texture {
            pattern: Pattern::Noise,
            seed: 11,
            cell: 6.0,
        },
        background: 0.5,
        margin: 0.0,
    }
}

#[test]
fn arc_positions_follow_rigid_rotation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = ArcConfig::default();
    for deg in [-170.0f64, -135.0, -90.0, -45.0, -10.0, 10.0, 45.0, 90.0, 135.0, 170.0] {
        let omega = deg.to_radians();
        let center = (rng.gen_range(-50.0..150.0), rng.gen_range(-50.0..150.0));
        let spec = rotation_scene(100, 100, center, omega);
        let sigma = spec.sigma01();
        for _ in 0..200 {
            let p = (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0));
            let p1 = oracle_intermediate_position(&spec, p, 1.0);
            let (u, v) = (p1.0 - p.0, p1.1 - p.1);
            for k in 1..10 {
                let t = k as f64 / 10.0;
                let (dx, dy) = pixel_displacement(u, v, sigma, t, &cfg).unwrap();
                let truth = oracle_intermediate_position(&spec, p, t);
                let err = (p.0 + dx - truth.0).hypot(p.1 + dy - truth.1);
                assert!(err <= 1e-3, "omega={deg} t={t} err={err}");
            }
        }
    }
}

#[test]
fn quarter_turn_midpoint_matches_trigonometry() {
    let spec = rotation_scene(4, 4, (0.0, 0.0), PI / 2.0);
    let gt = ground_truth_fields(&spec).unwrap();
    let mid = intermediate_flow(&gt.flow01, &gt.sigma01, 0.5, &ArcConfig::default()).unwrap();
    let (dx, dy) = mid.get(1, 0);
    assert!((dx as f64 - (0.5f64.sqrt() - 1.0)).abs() < 1e-6);
    assert!((dy as f64 - 0.5f64.sqrt()).abs() < 1e-6);
}

#[test]
fn field_level_rotation_forward_and_backward() {
    let cfg = ArcConfig::default();
    for deg in [-135.0f64, -45.0, 30.0, 90.0, 170.0] {
        let spec = rotation_scene(48, 40, (20.0, 25.0), deg.to_radians());
        let gt = ground_truth_fields(&spec).unwrap();
        for k in 1..10 {
            let t = k as f64 / 10.0;
            let f0t = intermediate_flow(&gt.flow01, &gt.sigma01, t, &cfg).unwrap();
            let f1t = backward_intermediate_flow(&gt.flow10, &gt.sigma10, t, &cfg).unwrap();
            for y in 0..spec.height {
                for x in 0..spec.width {
                    let p = (x as f64, y as f64);
                    // forward: pixel of frame 0
                    let truth = oracle_intermediate_position(&spec, p, t);
                    let (u, v) = f0t.get(x, y);
                    let err = (p.0 + u as f64 - truth.0).hypot(p.1 + v as f64 - truth.1);
                    assert!(err <= 1e-3, "forward deg={deg} t={t} err={err}");
                    // backward: pixel of frame 1 lands where its frame-0 source is at t
                    let source = spec.motion.invert(p, 1.0);
                    let truth = oracle_intermediate_position(&spec, source, t);
                    let (u, v) = f1t.get(x, y);
                    let err = (p.0 + u as f64 - truth.0).hypot(p.1 + v as f64 - truth.1);
                    assert!(err <= 1e-3, "backward deg={deg} t={t} err={err}");
                }
            }
        }
    }
}

#[test]
fn translation_scenes_stay_linear() {
    let spec = SceneSpec {
        motion: Motion::Translation { dx: 5.5, dy: -3.25 },
        ..rotation_scene(16, 12, (0.0, 0.0), 0.0)
    };
    let gt = ground_truth_fields(&spec).unwrap();
    let cfg = ArcConfig::default();
    assert!(gt.sigma01.as_slice().iter().all(|&s| !cfg.uses_arc(s as f64)));
    let mid = intermediate_flow(&gt.flow01, &gt.sigma01, 0.5, &cfg).unwrap();
    assert!(mid.iter().all(|uv| uv == (2.75, -1.625)));
}

#[test]
fn generated_sigma_maps_in_range() {
    for deg in [-180.0f64, -60.0, 0.0, 60.0, 180.0] {
        let gt = ground_truth_fields(&rotation_scene(8, 8, (3.0, 3.0), deg.to_radians())).unwrap();
        for s in gt.sigma01.as_slice().iter().chain(gt.sigma10.as_slice()) {
            assert!((-1.0..=1.0).contains(s));
        }
    }
}

#[test]
fn splat_weights_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let img = random_image(&mut rng, 8, 8, 3);
    let flow = FlowField::from_fn(8, 8, |_, _| (0.25, 0.75)).unwrap();
    let s = splat_sum(&img, &flow).unwrap();
    let expected = brute_weights(&flow);
    for (a, b) in s.weights.iter().zip(&expected) {
        assert!((a - b).abs() < 1e-12);
    }
    // interior sources keep their full unit weight, the last row and column lose part of it
    assert!((s.total_weight() - brute_total_weight(&flow)).abs() < 1e-12);
    assert!((s.total_weight() - (7.0 + 0.75) * (7.0 + 0.25)).abs() < 1e-12);

    let flow = random_flow(&mut rng, 12, 10, 3.0);
    let img = random_image(&mut rng, 12, 10, 2);
    let s = splat_sum(&img, &flow).unwrap();
    for (a, b) in s.weights.iter().zip(brute_weights(&flow)) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn warped_sigma_covers_rotated_support() {
    let omega = 50f64.to_radians();
    let spec = rotation_scene(64, 64, (31.5, 31.5), omega);
    let gt = ground_truth_fields(&spec).unwrap();
    let f0t = intermediate_flow(&gt.flow01, &gt.sigma01, 0.5, &ArcConfig::default()).unwrap();
    let frame0 = ground_truth_frame(&spec, 0.0).unwrap();
    let (warped, mask) = warp_bundle(&[&frame0, &gt.sigma01.to_image()], &f0t).unwrap();
    let sigma = spec.sigma01() as f32;
    for y in 0..64 {
        for x in 0..64 {
            let q = (x as f64, y as f64);
            let src = spec.motion.invert(q, 0.5);
            let inside = |m: f64| src.0 >= m && src.1 >= m && src.0 <= 63.0 - m && src.1 <= 63.0 - m;
            let ws = warped[1].get(x, y, 0);
            // weight only arrives from landings less than one pixel away per axis
            if mask.get(x, y) {
                assert!(inside(-1.5), "({x},{y}) filled from outside the frame");
                assert!((ws - sigma).abs() < 1e-6);
            } else {
                assert_eq!(ws, 0.0);
                assert!(!inside(1.0), "({x},{y}) is a hole inside the rotated frame");
            }
        }
    }
}

#[test]
fn metrics_agree_with_loops() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (w, h, c) in [(12, 11, 1), (16, 16, 3), (31, 20, 3)] {
        let a = random_image(&mut rng, w, h, c);
        let b = random_image(&mut rng, w, h, c);
        assert!((metrics::psnr(&a, &b).unwrap() - brute_psnr(&a, &b)).abs() < 1e-9);
        assert!((metrics::interpolation_error(&a, &b).unwrap() - brute_ie(&a, &b)).abs() < 1e-9);
        for eps in [0.001, 0.1] {
            let got = metrics::charbonnier(&a, &b, eps).unwrap();
            assert!((got - brute_charbonnier(&a, &b, eps)).abs() < 1e-9);
        }
    }
}
