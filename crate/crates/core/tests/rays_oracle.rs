mod common;

use std::f64::consts::PI;

use common::{oracle_ray_directions, oracle_rm};
use focusray_core::rays::rm_scores;
use focusray_core::{compute_rm, generate_metric_rays, layer_weight, MidCamera, RayConfig, SceneObject, Vec3};
use proptest::prelude::*;

fn cam() -> MidCamera {
    MidCamera {
        position: Vec3::new(0.5, 1.7, 2.0),
        forward: Vec3::new(0.0, 0.0, -1.0),
        up: Vec3::Y,
    }
}

#[test]
fn directions_match_rotation_oracle() {
    let c = MidCamera {
        position: Vec3::ZERO,
        forward: Vec3::new(0.6, 0.0, -0.8),
        up: Vec3::Y,
    };
    for (k, n) in [(1, 1), (2, 8), (3, 50), (4, 64)] {
        let cfg = RayConfig::new(k, n, 0.35).unwrap();
        let rays = generate_metric_rays(&cfg, &c);
        let oracle = oracle_ray_directions(&c, k, n, 0.35);
        assert_eq!(rays.len(), oracle.len());
        for (r, (layer, dir, w)) in rays.iter().zip(oracle) {
            assert_eq!(r.layer, layer);
            assert!((r.direction - dir).length() < 1e-12, "{:?} vs {:?}", r.direction, dir);
            assert!((r.weight - w).abs() < 1e-15);
        }
    }
}

/// Azimuth of each ray around the view axis, in [0, 2π).
fn azimuths(rays: &[focusray_core::WeightedRay], c: &MidCamera, layer: usize) -> Vec<f64> {
    let right = c.right();
    let mut out: Vec<f64> = rays
        .iter()
        .filter(|r| r.layer == layer)
        .map(|r| r.direction.dot(c.up).atan2(r.direction.dot(right)).rem_euclid(2.0 * PI))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

#[test]
fn azimuth_gaps_are_near_uniform() {
    let c = cam();
    let cfg = RayConfig::new(3, 50, 20f64.to_radians()).unwrap();
    let rays = generate_metric_rays(&cfg, &c);
    for layer in 1..=3 {
        let az = azimuths(&rays, &c, layer);
        let mut gaps: Vec<f64> = az.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.push(az[0] + 2.0 * PI - az[az.len() - 1]);
        let mean = 2.0 * PI / gaps.len() as f64;
        let max = gaps.iter().cloned().fold(0.0, f64::max);
        // Three-distance theorem: at most three distinct gap lengths.
        let mut distinct: Vec<f64> = Vec::new();
        for g in &gaps {
            if !distinct.iter().any(|d| (d - g).abs() < 1e-9) {
                distinct.push(*g);
            }
        }
        assert!(distinct.len() <= 3, "layer {layer}: {distinct:?}");
        assert!(max <= 3.0 * mean, "layer {layer}: max gap {max}, mean {mean}");
    }
}

#[test]
fn occluder_takes_inner_layer_weight() {
    let c = MidCamera {
        position: Vec3::ZERO,
        forward: Vec3::new(0.0, 0.0, -1.0),
        up: Vec3::Y,
    };
    let half = 0.2;
    let cfg = RayConfig::new(3, 12, half).unwrap();
    let rays = generate_metric_rays(&cfg, &c);
    // Small sphere A at 5 m covering polar angles < ~0.1 rad (layer 1 is at
    // 0.0667 rad, layer 2 at 0.133 rad); large sphere B at 20 m catches every ray.
    let a = SceneObject::new(1, Vec3::new(0.0, 0.0, -5.0), 0.5, 0.0, "A").unwrap();
    let b = SceneObject::new(2, Vec3::new(0.0, 0.0, -20.0), 8.0, 0.0, "B").unwrap();
    let scene = vec![b.clone(), a.clone()];

    // Enumerate all rays with the oracle intersector.
    let inner: f64 = rays.iter().filter(|r| r.layer == 1).map(|r| r.weight).sum();
    let oracle = oracle_rm(&c, &rays, &scene);
    assert!((oracle[1] - inner).abs() < 1e-15);
    assert!((inner - layer_weight(1, 3).unwrap()).abs() < 1e-12);

    let rm_a = compute_rm(&c, &rays, &scene, 1).unwrap();
    let rm_b = compute_rm(&c, &rays, &scene, 2).unwrap();
    assert_eq!(rm_a, oracle[1]);
    assert_eq!(rm_b, oracle[0]);
    assert!((rm_a - 0.5).abs() < 1e-12);
    assert!((rm_b - (1.0 - rm_a)).abs() < 1e-12);
}

proptest! {
    #[test]
    fn ray_count_and_weights(k in 1usize..8, n in 1usize..100, half in 0.01..1.5f64) {
        let cfg = RayConfig::new(k, n, half).unwrap();
        let rays = generate_metric_rays(&cfg, &cam());
        prop_assert_eq!(rays.len(), k * n);
        let sum: f64 = rays.iter().map(|r| r.weight).sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
        prop_assert!(rays.iter().all(|r| r.weight > 0.0 && r.direction.is_unit()));
        for i in 1..k {
            prop_assert!(layer_weight(i, k).unwrap() > layer_weight(i + 1, k).unwrap());
        }
        // layer-major ordering
        prop_assert!(rays.windows(2).all(|w| w[0].layer <= w[1].layer));
    }

    #[test]
    fn rm_scores_are_bounded_and_exclusive(
        spheres in proptest::collection::vec(((-4.0..4.0f64, -4.0..4.0f64, -30.0..-1.0f64), 0.1..3.0f64), 0..8),
    ) {
        let scene: Vec<SceneObject> = spheres
            .iter()
            .enumerate()
            .map(|(i, ((x, y, z), r))| SceneObject::new(i as u32, Vec3::new(*x, *y, *z), *r, 0.0, "s").unwrap())
            .collect();
        let c = MidCamera { position: Vec3::ZERO, forward: Vec3::new(0.0, 0.0, -1.0), up: Vec3::Y };
        let cfg = RayConfig::new(3, 20, 0.3).unwrap();
        let rays = generate_metric_rays(&cfg, &c);
        let scores = rm_scores(&c, &rays, &scene);
        let total: f64 = scores.iter().sum();
        prop_assert!(total <= 1.0 + 1e-12);
        prop_assert!(scores.iter().all(|s| (0.0..=1.0 + 1e-12).contains(s)));
        // Σ RM = weight of rays that hit anything.
        let hit_weight: f64 = rays
            .iter()
            .filter(|r| scene.iter().any(|o| focusray_core::ray_sphere_intersect(c.position, r.direction, o).is_some()))
            .map(|r| r.weight)
            .sum();
        prop_assert!((total - hit_weight).abs() < 1e-12);
    }
}

#[test]
fn generation_is_deterministic() {
    let cfg = RayConfig::new(4, 64, 0.3).unwrap();
    let a = generate_metric_rays(&cfg, &cam());
    let b = generate_metric_rays(&cfg, &cam());
    assert!(a
        .iter()
        .zip(&b)
        .all(|(x, y)| x.direction.x.to_bits() == y.direction.x.to_bits()
            && x.direction.y.to_bits() == y.direction.y.to_bits()
            && x.direction.z.to_bits() == y.direction.z.to_bits()
            && x.weight.to_bits() == y.weight.to_bits()));
}
