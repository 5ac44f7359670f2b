//! Importance function and focus-object selection.
//!
//! Each candidate's importance is a convex combination of its metric-ray
//! score, a depth score and its designer-assigned value. The candidate with
//! the highest importance among objects inside the ROI becomes the focus.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::{derive_mid_camera, roi_contains, MidCamera, ObjectId, Roi, SceneObject, StereoRig};
use crate::rays::{generate_metric_rays, rm_scores, RayConfig};

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicWeights {
    rm: f64,
    depth: f64,
    value: f64,
}

impl HeuristicWeights {
    pub fn new(rm: f64, depth: f64, value: f64) -> Result<Self> {
        for (field, w) in [("p_rm", rm), ("p_d", depth), ("p_v", value)] {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::validation(field, format!("must be >= 0, got {w}")));
            }
        }
        let sum = rm + depth + value;
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::validation(
                "p_rm + p_d + p_v",
                format!("weights must sum to 1, got {sum}"),
            ));
        }
        Ok(HeuristicWeights { rm, depth, value })
    }

    pub fn rm(&self) -> f64 {
        self.rm
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

impl Default for HeuristicWeights {
    fn default() -> Self {
        HeuristicWeights {
            rm: 0.5,
            depth: 0.3,
            value: 0.2,
        }
    }
}

/// Mapping from camera distance to the `[0, 1]` depth score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DepthProfile {
    /// `1 − min(dist, z_far) / z_far`
    #[default]
    Linear,
    /// `1 / (1 + dist)`
    Inverse,
}

impl DepthProfile {
    pub fn name(&self) -> &'static str {
        match self {
            DepthProfile::Linear => "linear",
            DepthProfile::Inverse => "inverse",
        }
    }
}

impl std::str::FromStr for DepthProfile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "linear" => Ok(DepthProfile::Linear),
            "inverse" => Ok(DepthProfile::Inverse),
            other => Err(format!("unknown depth profile `{other}` (expected linear or inverse)")),
        }
    }
}

/// Linear depth score; 1 at the camera, 0 at and beyond `z_far`.
pub fn depth_metric(cam: &MidCamera, object: &SceneObject, z_far: f64) -> f64 {
    depth_metric_with(DepthProfile::Linear, cam, object, z_far)
}

pub fn depth_metric_with(profile: DepthProfile, cam: &MidCamera, object: &SceneObject, z_far: f64) -> f64 {
    let dist = object.center.distance(cam.position);
    match profile {
        DepthProfile::Linear => 1.0 - dist.min(z_far) / z_far,
        DepthProfile::Inverse => 1.0 / (1.0 + dist),
    }
}

pub fn importance(weights: &HeuristicWeights, rm: f64, depth: f64, value: f64) -> f64 {
    weights.rm * rm + weights.depth * depth + weights.value * value
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusCandidate {
    pub object_id: ObjectId,
    pub rm: f64,
    pub depth: f64,
    pub value: f64,
    pub importance: f64,
    /// Distance from the midpoint camera to the object center.
    pub distance: f64,
}

/// Result of one selection pass.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Selection {
    pub focus: Option<FocusCandidate>,
    /// Every ROI candidate, ascending by object id.
    pub candidates: Vec<FocusCandidate>,
}

/// Total order used for the argmax: importance, then depth score, then lower id.
fn rank(a: &FocusCandidate, b: &FocusCandidate) -> Ordering {
    a.importance
        .total_cmp(&b.importance)
        .then(a.depth.total_cmp(&b.depth))
        .then(b.object_id.cmp(&a.object_id))
}

pub fn select_focus(
    scene: &[SceneObject],
    rig: &StereoRig,
    roi: &Roi,
    ray_cfg: &RayConfig,
    weights: &HeuristicWeights,
) -> Result<Selection> {
    select_focus_with(scene, rig, roi, ray_cfg, weights, DepthProfile::Linear)
}

/// Runs the full pipeline: ROI culling, one metric-ray pass over the whole
/// scene (objects outside the ROI still occlude), scoring and argmax.
pub fn select_focus_with(
    scene: &[SceneObject],
    rig: &StereoRig,
    roi: &Roi,
    ray_cfg: &RayConfig,
    weights: &HeuristicWeights,
    profile: DepthProfile,
) -> Result<Selection> {
    let cam = derive_mid_camera(rig)?;
    let in_roi: Vec<bool> = scene.iter().map(|o| roi_contains(roi, o)).collect();
    if !in_roi.iter().any(|&b| b) {
        return Ok(Selection::default());
    }

    // Per-object sums accumulate in ray order and ray ties resolve by id, so
    // the scores do not depend on the order of `scene`.
    let rays = generate_metric_rays(ray_cfg, &cam);
    let scores = rm_scores(&cam, &rays, scene);

    let mut candidates: Vec<FocusCandidate> = scene
        .iter()
        .zip(&scores)
        .zip(&in_roi)
        .filter(|(_, &inside)| inside)
        .map(|((obj, &rm), _)| {
            let depth = depth_metric_with(profile, &cam, obj, roi.z_far());
            FocusCandidate {
                object_id: obj.id,
                rm,
                depth,
                value: obj.value,
                importance: importance(weights, rm, depth, obj.value),
                distance: obj.center.distance(cam.position),
            }
        })
        .collect();
    candidates.sort_by_key(|c| c.object_id);

    let focus = candidates.iter().copied().max_by(rank);
    Ok(Selection { focus, candidates })
}
