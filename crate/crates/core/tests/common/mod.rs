//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the library's intersection, ray-generation or
//! scoring code; only plain data types are shared.
#![allow(dead_code)]

use std::f64::consts::PI;

use focusray_core::{MidCamera, SceneObject, Vec3, WeightedRay};
use rand::Rng;

/// Geometric (closest-approach) ray/sphere test.
pub fn oracle_hit(origin: Vec3, dir: Vec3, obj: &SceneObject) -> Option<f64> {
    let to_center = obj.center - origin;
    let r2 = obj.radius * obj.radius;
    let dist2 = to_center.dot(to_center);
    if dist2 <= r2 {
        return Some(0.0);
    }
    let tca = to_center.dot(dir);
    if tca < 0.0 {
        return None;
    }
    let d2 = dist2 - tca * tca;
    if d2 > r2 {
        return None;
    }
    Some(tca - (r2 - d2).sqrt())
}

/// Hit/miss by marching along the ray in fixed steps.
pub fn march_hits(origin: Vec3, dir: Vec3, obj: &SceneObject, t_max: f64, step: f64) -> bool {
    let steps = (t_max / step).ceil() as usize;
    (0..=steps).any(|i| {
        let p = origin + dir * (i as f64 * step);
        (p - obj.center).length() <= obj.radius
    })
}

/// Per-object score by enumerating every ray and its nearest hit, in ray order.
pub fn oracle_rm(cam: &MidCamera, rays: &[WeightedRay], scene: &[SceneObject]) -> Vec<f64> {
    let mut scores = vec![0.0; scene.len()];
    for ray in rays {
        let mut best: Option<(f64, u32, usize)> = None;
        for (i, obj) in scene.iter().enumerate() {
            if let Some(t) = oracle_hit(cam.position, ray.direction, obj) {
                let take = match best {
                    None => true,
                    Some((bt, bid, _)) => t < bt || (t == bt && obj.id < bid),
                };
                if take {
                    best = Some((t, obj.id, i));
                }
            }
        }
        if let Some((_, _, i)) = best {
            scores[i] += ray.weight;
        }
    }
    scores
}

/// Rodrigues rotation of `v` about unit `axis` by `angle`.
pub fn rotate(v: Vec3, axis: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    v * c + axis.cross(v) * s + axis * (axis.dot(v) * (1.0 - c))
}

/// Metric ray directions built by two successive rotations of the view
/// direction: tilt towards the right axis, then spin about the view axis.
pub fn oracle_ray_directions(cam: &MidCamera, k: usize, n: usize, half_angle: f64) -> Vec<(usize, Vec3, f64)> {
    let golden = 2.0 * PI * (1.0 - 2.0 / (1.0 + 5f64.sqrt()));
    let total: f64 = (1..=k).map(|m| m as f64).sum();
    let mut out = Vec::new();
    for layer in 1..=k {
        let polar = half_angle * layer as f64 / k as f64;
        // Tilting forward towards right by `polar`: rotate about -up.
        let tilted = rotate(cam.forward, -cam.up, polar);
        for j in 0..n {
            let g = (layer - 1) * n + j;
            // Right-handed spin about the backward axis carries right towards up.
            let dir = rotate(tilted, -cam.forward, g as f64 * golden);
            let w = (k - layer + 1) as f64 / total / n as f64;
            out.push((layer, dir, w));
        }
    }
    out
}

pub fn random_unit<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let l = v.length();
        if l > 0.1 && l <= 1.0 {
            return v / l;
        }
    }
}

/// A random orthonormal (forward, up) pair.
pub fn random_frame<R: Rng>(rng: &mut R) -> (Vec3, Vec3) {
    let forward = random_unit(rng);
    loop {
        let u = random_unit(rng);
        let up = u - forward * forward.dot(u);
        if up.length() > 0.1 {
            return (forward, up / up.length());
        }
    }
}
