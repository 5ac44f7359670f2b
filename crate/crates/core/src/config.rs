//! Scenario configuration: a flat `key = value` file. Every key is optional
//! and falls back to its default; unknown or repeated keys are errors.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::attention::{DepthProfile, HeuristicWeights};
use crate::comfort::ComfortConfig;
use crate::dynamics::{BlurConfig, FocusConfig};
use crate::error::{Error, Result};
use crate::format::fmt_real;
use crate::rays::RayConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub ray_k: usize,
    pub ray_n: usize,
    pub ray_half_angle_deg: f64,
    pub roi_half_angle_deg: f64,
    pub roi_z_far_m: f64,
    pub p_rm: f64,
    pub p_d: f64,
    pub p_v: f64,
    pub depth_profile: DepthProfile,
    pub refocus_ms: f64,
    pub persistence_hold_ms: f64,
    pub initial_focal_m: f64,
    pub blur_per_meter: f64,
    pub max_blur: f64,
    pub tick_ms: f64,
    pub ipd_m: f64,
    pub comfort: ComfortConfig,
}

impl Default for SimConfig {
    fn default() -> Self {
        let focus = FocusConfig::default();
        let blur = BlurConfig::default();
        let w = HeuristicWeights::default();
        SimConfig {
            ray_k: 3,
            ray_n: 16,
            ray_half_angle_deg: 10.0,
            roi_half_angle_deg: 30.0,
            roi_z_far_m: 100.0,
            p_rm: w.rm(),
            p_d: w.depth(),
            p_v: w.value(),
            depth_profile: DepthProfile::Linear,
            refocus_ms: focus.refocus_ms,
            persistence_hold_ms: focus.persistence_hold_ms,
            initial_focal_m: 1.0,
            blur_per_meter: blur.blur_per_meter,
            max_blur: blur.max_blur,
            tick_ms: 16.0,
            ipd_m: 0.064,
            comfort: ComfortConfig::default(),
        }
    }
}

enum Value<'a> {
    Real(&'a mut f64),
    Count(&'a mut usize),
    Profile(&'a mut DepthProfile),
}

impl SimConfig {
    fn fields(&mut self) -> Vec<(&'static str, Value<'_>)> {
        let c = &mut self.comfort;
        vec![
            ("ray_k", Value::Count(&mut self.ray_k)),
            ("ray_n", Value::Count(&mut self.ray_n)),
            ("ray_half_angle_deg", Value::Real(&mut self.ray_half_angle_deg)),
            ("roi_half_angle_deg", Value::Real(&mut self.roi_half_angle_deg)),
            ("roi_z_far_m", Value::Real(&mut self.roi_z_far_m)),
            ("p_rm", Value::Real(&mut self.p_rm)),
            ("p_d", Value::Real(&mut self.p_d)),
            ("p_v", Value::Real(&mut self.p_v)),
            ("depth_profile", Value::Profile(&mut self.depth_profile)),
            ("refocus_ms", Value::Real(&mut self.refocus_ms)),
            ("persistence_hold_ms", Value::Real(&mut self.persistence_hold_ms)),
            ("initial_focal_m", Value::Real(&mut self.initial_focal_m)),
            ("blur_per_meter", Value::Real(&mut self.blur_per_meter)),
            ("max_blur", Value::Real(&mut self.max_blur)),
            ("tick_ms", Value::Real(&mut self.tick_ms)),
            ("ipd_m", Value::Real(&mut self.ipd_m)),
            ("accel_threshold", Value::Real(&mut c.accel_threshold)),
            ("min_episode_ms", Value::Real(&mut c.min_episode_ms)),
            ("fov_delta_threshold_deg", Value::Real(&mut c.fov_delta_threshold_deg)),
            ("motion_floor_mps", Value::Real(&mut c.motion_floor_speed)),
            ("motion_floor_dps", Value::Real(&mut c.motion_floor_angular)),
            ("walk_episode_ms", Value::Real(&mut c.walk_episode_ms)),
            ("max_session_ms", Value::Real(&mut c.max_session_ms)),
            ("jump_distance_min_m", Value::Real(&mut c.jump_distance_min)),
            ("target_frame_ms", Value::Real(&mut c.target_frame_ms)),
            ("drop_factor", Value::Real(&mut c.drop_factor)),
        ]
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = crate::format::read_text(path)?;
        SimConfig::parse(&text, path)
    }

    /// Parses and validates a config file body. `path` is only used in errors.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let entries = parse_key_values(text, path)?;
        let mut cfg = SimConfig::default();
        let mut fields: BTreeMap<&'static str, Value<'_>> = cfg.fields().into_iter().collect();
        for (key, (line, raw)) in &entries {
            let slot = fields
                .get_mut(key.as_str())
                .ok_or_else(|| Error::parse(path, *line, format!("unknown config key `{key}`")))?;
            let bad = |what: &str| Error::parse(path, *line, format!("`{key}`: expected {what}, got `{raw}`"));
            match slot {
                Value::Real(v) => **v = f64::from_str(raw).map_err(|_| bad("a number"))?,
                Value::Count(v) => **v = usize::from_str(raw).map_err(|_| bad("a non-negative integer"))?,
                Value::Profile(v) => **v = DepthProfile::from_str(raw).map_err(|m| Error::parse(path, *line, m))?,
            }
        }
        drop(fields);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.ray_config()?;
        self.weights()?;
        crate::geometry::Roi::new(
            crate::geometry::Vec3::ZERO,
            crate::geometry::Vec3::Z,
            self.roi_half_angle_deg.to_radians(),
            self.roi_z_far_m,
        )
        .map_err(|e| match e {
            Error::Validation { field, message } => Error::validation(
                if field == "roi_half_angle" {
                    "roi_half_angle_deg"
                } else {
                    "roi_z_far_m"
                },
                message,
            ),
            other => other,
        })?;
        self.focus_config().validate()?;
        self.comfort.validate()?;
        let positive = [
            ("tick_ms", self.tick_ms),
            ("ipd_m", self.ipd_m),
            ("blur_per_meter", self.blur_per_meter),
            ("max_blur", self.max_blur),
        ];
        for (field, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::validation(field, format!("must be > 0, got {v}")));
            }
        }
        if !(self.initial_focal_m >= 0.0 && self.initial_focal_m.is_finite()) {
            return Err(Error::validation("initial_focal_m", "must be >= 0"));
        }
        Ok(())
    }

    pub fn ray_config(&self) -> Result<RayConfig> {
        RayConfig::new(self.ray_k, self.ray_n, self.ray_half_angle_deg.to_radians()).map_err(|e| match e {
            Error::Validation { field, message } if field == "ray_half_angle" => {
                Error::validation("ray_half_angle_deg", message)
            }
            other => other,
        })
    }

    pub fn weights(&self) -> Result<HeuristicWeights> {
        HeuristicWeights::new(self.p_rm, self.p_d, self.p_v)
    }

    pub fn focus_config(&self) -> FocusConfig {
        FocusConfig {
            refocus_ms: self.refocus_ms,
            persistence_hold_ms: self.persistence_hold_ms,
        }
    }

    pub fn blur_config(&self) -> BlurConfig {
        BlurConfig {
            blur_per_meter: self.blur_per_meter,
            max_blur: self.max_blur,
        }
    }

    /// Every resolved key in canonical order, reals with 6 decimals.
    pub fn to_text(&self) -> String {
        let mut copy = self.clone();
        let mut out = String::new();
        for (key, value) in copy.fields() {
            let rendered = match value {
                Value::Real(v) => fmt_real(*v),
                Value::Count(v) => v.to_string(),
                Value::Profile(v) => v.name().to_string(),
            };
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(&rendered);
            out.push('\n');
        }
        out
    }
}

/// `key = value` lines with `#` comments. Returns key → (line, value).
pub(crate) fn parse_key_values(text: &str, path: &Path) -> Result<BTreeMap<String, (usize, String)>> {
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| Error::parse(path, line, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(Error::parse(path, line, "empty key"));
        }
        if out.insert(key.to_string(), (line, value.to_string())).is_some() {
            return Err(Error::parse(path, line, format!("duplicate key `{key}`")));
        }
    }
    Ok(out)
}
