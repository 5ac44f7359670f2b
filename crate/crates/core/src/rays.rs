//! Metric rays: a cone of `k` concentric layers with `n` rays each, spread
//! azimuthally by the golden angle, and the weighted nearest-hit score built
//! on top of them.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{ray_sphere_intersect, MidCamera, ObjectId, SceneObject, Vec3};

/// `2π(1 − 1/φ)`, about 2.399963 rad (137.5°).
pub const GOLDEN_ANGLE: f64 = PI * (3.0 - 2.236_067_977_499_79);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayConfig {
    layers: usize,
    rays_per_layer: usize,
    half_angle: f64,
}

impl RayConfig {
    /// `layers` (k) and `rays_per_layer` (n) must be at least 1 and
    /// `half_angle` must lie in `(0, π/2)` radians.
    pub fn new(layers: usize, rays_per_layer: usize, half_angle: f64) -> Result<Self> {
        if layers == 0 {
            return Err(Error::validation("ray_k", "must be at least 1"));
        }
        if rays_per_layer == 0 {
            return Err(Error::validation("ray_n", "must be at least 1"));
        }
        if !(half_angle > 0.0 && half_angle < PI / 2.0) {
            return Err(Error::validation(
                "ray_half_angle",
                format!("must lie in (0, π/2) radians, got {half_angle}"),
            ));
        }
        Ok(RayConfig {
            layers,
            rays_per_layer,
            half_angle,
        })
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn rays_per_layer(&self) -> usize {
        self.rays_per_layer
    }

    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    pub fn ray_count(&self) -> usize {
        self.layers * self.rays_per_layer
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedRay {
    pub direction: Vec3,
    /// 1-based layer index; layer 1 is closest to the cone axis.
    pub layer: usize,
    /// Per-ray share of the layer weight, `layer_weight(layer, k) / n`.
    pub weight: f64,
}

/// Normalized linear taper: `(k − i + 1) / (1 + 2 + … + k)`.
pub fn layer_weight(layer: usize, layers: usize) -> Result<f64> {
    if layer == 0 || layer > layers {
        return Err(Error::InvalidArgument(format!(
            "layer index {layer} outside 1..={layers}"
        )));
    }
    let total = (layers * (layers + 1) / 2) as f64;
    Ok((layers - layer + 1) as f64 / total)
}

/// Generates the `k·n` metric rays in layer-major order.
///
/// Layer `i` sits at polar angle `half_angle · i / k`. The ray with global
/// index `g = (i − 1)·n + j` (`j` zero-based within the layer) has azimuth
/// `g · GOLDEN_ANGLE`, measured from the camera's right axis towards its up
/// axis.
pub fn generate_metric_rays(config: &RayConfig, cam: &MidCamera) -> Vec<WeightedRay> {
    let k = config.layers;
    let n = config.rays_per_layer;
    let right = cam.right();
    let up = cam.up;
    let forward = cam.forward;

    let mut rays = Vec::with_capacity(k * n);
    for layer in 1..=k {
        let alpha = layer_weight(layer, k).expect("layer in range");
        let weight = alpha / n as f64;
        let polar = config.half_angle * layer as f64 / k as f64;
        let (sin_p, cos_p) = polar.sin_cos();
        for j in 0..n {
            let global = (layer - 1) * n + j;
            let azimuth = (global as f64 * GOLDEN_ANGLE).rem_euclid(2.0 * PI);
            let (sin_a, cos_a) = azimuth.sin_cos();
            let lateral = right * cos_a + up * sin_a;
            let direction = forward * cos_p + lateral * sin_p;
            // Re-normalize away rounding drift from a non-orthonormal frame.
            let direction = direction.try_normalize().unwrap_or(forward);
            rays.push(WeightedRay {
                direction,
                layer,
                weight,
            });
        }
    }
    rays
}

/// Index into `scene` of the nearest object hit along a ray. Equal hit
/// distances go to the lower object id.
pub fn nearest_hit(origin: Vec3, direction: Vec3, scene: &[SceneObject]) -> Option<usize> {
    let mut best: Option<(f64, ObjectId, usize)> = None;
    for (idx, obj) in scene.iter().enumerate() {
        if let Some(t) = ray_sphere_intersect(origin, direction, obj) {
            let better = match best {
                None => true,
                Some((bt, bid, _)) => t < bt || (t == bt && obj.id < bid),
            };
            if better {
                best = Some((t, obj.id, idx));
            }
        }
    }
    best.map(|(_, _, idx)| idx)
}

/// Scores for every object of `scene` (same order), accumulated in ray order.
pub fn rm_scores(cam: &MidCamera, rays: &[WeightedRay], scene: &[SceneObject]) -> Vec<f64> {
    let mut scores = vec![0.0; scene.len()];
    for ray in rays {
        if let Some(idx) = nearest_hit(cam.position, ray.direction, scene) {
            scores[idx] += ray.weight;
        }
    }
    scores
}

/// Weighted fraction of metric rays whose nearest hit is `target`.
pub fn compute_rm(cam: &MidCamera, rays: &[WeightedRay], scene: &[SceneObject], target: ObjectId) -> Result<f64> {
    let idx = scene
        .iter()
        .position(|o| o.id == target)
        .ok_or_else(|| Error::InvalidArgument(format!("object id {target} not in scene")))?;
    let mut rm = 0.0;
    for ray in rays {
        if nearest_hit(cam.position, ray.direction, scene) == Some(idx) {
            rm += ray.weight;
        }
    }
    Ok(rm)
}
