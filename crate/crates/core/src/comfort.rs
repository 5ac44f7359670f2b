//! Batch comfort analysis of a recorded camera trajectory.
//!
//! Each rule scans the trajectory for one sickness factor and reports
//! episodes with a start/end time and a heuristic severity. Severities are
//! descriptive numbers for ranking episodes, not validated sickness predictors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::Vec3;

const FRAME_UNIT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t_ms: f64,
    pub position: Vec3,
    pub forward: Vec3,
    pub up: Vec3,
    pub fov_deg: f64,
    pub user_initiated: bool,
    pub frame_time_ms: f64,
}

/// Rules in report order; ties on `start_ms` sort by this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComfortRule {
    AccelerationRamp,
    UncontrolledCamera,
    FovManipulation,
    FrameDrop,
    SessionDuration,
    ContinuousLocomotion,
}

impl ComfortRule {
    pub const ALL: [ComfortRule; 6] = [
        ComfortRule::AccelerationRamp,
        ComfortRule::UncontrolledCamera,
        ComfortRule::FovManipulation,
        ComfortRule::FrameDrop,
        ComfortRule::SessionDuration,
        ComfortRule::ContinuousLocomotion,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ComfortRule::AccelerationRamp => "AccelerationRamp",
            ComfortRule::UncontrolledCamera => "UncontrolledCamera",
            ComfortRule::FovManipulation => "FovManipulation",
            ComfortRule::FrameDrop => "FrameDrop",
            ComfortRule::SessionDuration => "SessionDuration",
            ComfortRule::ContinuousLocomotion => "ContinuousLocomotion",
        }
    }
}

impl fmt::Display for ComfortRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComfortFinding {
    pub rule: ComfortRule,
    pub start_ms: f64,
    pub end_ms: f64,
    /// Heuristic severity; see each rule for its unit.
    pub severity: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComfortConfig {
    /// m/s²
    pub accel_threshold: f64,
    pub min_episode_ms: f64,
    /// Degrees per sample.
    pub fov_delta_threshold_deg: f64,
    /// m/s
    pub motion_floor_speed: f64,
    /// deg/s
    pub motion_floor_angular: f64,
    pub walk_episode_ms: f64,
    pub max_session_ms: f64,
    /// Meters; adjacent-sample jumps above this with no motion on either side are teleports.
    pub jump_distance_min: f64,
    pub target_frame_ms: f64,
    pub drop_factor: f64,
}

impl Default for ComfortConfig {
    fn default() -> Self {
        ComfortConfig {
            accel_threshold: 1.0,
            min_episode_ms: 200.0,
            fov_delta_threshold_deg: 1.0,
            motion_floor_speed: 0.05,
            motion_floor_angular: 5.0,
            walk_episode_ms: 2000.0,
            max_session_ms: 1_800_000.0,
            jump_distance_min: 0.5,
            target_frame_ms: 11.1,
            drop_factor: 2.0,
        }
    }
}

impl ComfortConfig {
    pub fn validate(&self) -> Result<()> {
        let checks: [(&str, f64, bool); 10] = [
            ("accel_threshold", self.accel_threshold, false),
            ("min_episode_ms", self.min_episode_ms, true),
            ("fov_delta_threshold_deg", self.fov_delta_threshold_deg, true),
            ("motion_floor_speed", self.motion_floor_speed, true),
            ("motion_floor_angular", self.motion_floor_angular, true),
            ("walk_episode_ms", self.walk_episode_ms, true),
            ("max_session_ms", self.max_session_ms, false),
            ("jump_distance_min", self.jump_distance_min, false),
            ("target_frame_ms", self.target_frame_ms, false),
            ("drop_factor", self.drop_factor, false),
        ];
        for (field, v, zero_ok) in checks {
            let ok = v.is_finite() && if zero_ok { v >= 0.0 } else { v > 0.0 };
            if !ok {
                let bound = if zero_ok { ">= 0" } else { "> 0" };
                return Err(Error::validation(field, format!("must be {bound}, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SessionMeta {
    pub duration_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComfortReport {
    pub findings: Vec<ComfortFinding>,
    /// Count per rule, every rule present.
    pub counts: BTreeMap<ComfortRule, usize>,
}

impl ComfortReport {
    fn new(mut findings: Vec<ComfortFinding>) -> Self {
        findings.sort_by(|a, b| a.start_ms.total_cmp(&b.start_ms).then(a.rule.cmp(&b.rule)));
        let mut counts: BTreeMap<ComfortRule, usize> = ComfortRule::ALL.iter().map(|&r| (r, 0)).collect();
        for f in &findings {
            *counts.entry(f.rule).or_default() += 1;
        }
        ComfortReport { findings, counts }
    }

    pub fn count(&self, rule: ComfortRule) -> usize {
        self.counts.get(&rule).copied().unwrap_or(0)
    }
}

pub fn validate_trajectory(traj: &[TrajectorySample]) -> Result<()> {
    for (i, s) in traj.iter().enumerate() {
        let field = |name: &str| format!("trajectory[{i}].{name}");
        if !s.t_ms.is_finite() {
            return Err(Error::validation(field("t_ms"), "must be finite"));
        }
        if i > 0 && s.t_ms <= traj[i - 1].t_ms {
            return Err(Error::validation(
                field("t_ms"),
                "timestamps must be strictly increasing",
            ));
        }
        if !s.position.is_finite() {
            return Err(Error::validation(field("position"), "must be finite"));
        }
        for (name, v) in [("forward", s.forward), ("up", s.up)] {
            if !v.is_finite() || (v.length() - 1.0).abs() > FRAME_UNIT_TOLERANCE {
                return Err(Error::validation(field(name), "must be a unit vector"));
            }
        }
        if !(s.fov_deg > 0.0 && s.fov_deg < 180.0) {
            return Err(Error::validation(field("fov_deg"), "must lie in (0, 180)"));
        }
        if !(s.frame_time_ms > 0.0 && s.frame_time_ms.is_finite()) {
            return Err(Error::validation(field("frame_time_ms"), "must be positive"));
        }
    }
    Ok(())
}

fn require_samples(traj: &[TrajectorySample]) -> Result<()> {
    if traj.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "trajectory needs at least 3 samples, got {}",
            traj.len()
        )));
    }
    Ok(())
}

/// Second-order central-difference acceleration (m/s²) at every interior
/// sample, using the non-uniform three-point stencil. Endpoints are `None`.
pub fn estimate_acceleration(traj: &[TrajectorySample]) -> Vec<Option<Vec3>> {
    let mut out = vec![None; traj.len()];
    for i in 1..traj.len().saturating_sub(1) {
        let h1 = (traj[i].t_ms - traj[i - 1].t_ms) / 1000.0;
        let h2 = (traj[i + 1].t_ms - traj[i].t_ms) / 1000.0;
        let num = traj[i + 1].position * h1 - traj[i].position * (h1 + h2) + traj[i - 1].position * h2;
        out[i] = Some(num * (2.0 / (h1 * h2 * (h1 + h2))));
    }
    out
}

/// Linear speed (m/s) of each segment `i → i+1`.
fn segment_speeds(traj: &[TrajectorySample]) -> Vec<f64> {
    traj.windows(2)
        .map(|w| w[1].position.distance(w[0].position) / ((w[1].t_ms - w[0].t_ms) / 1000.0))
        .collect()
}

/// Angular speed (deg/s) of each segment, the larger of the forward and up rotations.
fn segment_angular_speeds(traj: &[TrajectorySample]) -> Vec<f64> {
    traj.windows(2)
        .map(|w| {
            let dt = (w[1].t_ms - w[0].t_ms) / 1000.0;
            let a = w[0].forward.angle_to(w[1].forward).max(w[0].up.angle_to(w[1].up));
            a.to_degrees() / dt
        })
        .collect()
}

/// Segments that are discrete teleport jumps: a displacement above
/// `jump_distance_min` with the camera at rest on both neighbouring segments.
fn jump_segments(traj: &[TrajectorySample], cfg: &ComfortConfig) -> Vec<bool> {
    let speeds = segment_speeds(traj);
    let n = speeds.len();
    (0..n)
        .map(|j| {
            let disp = traj[j + 1].position.distance(traj[j].position);
            let still_before = j == 0 || speeds[j - 1] <= cfg.motion_floor_speed;
            let still_after = j + 1 == n || speeds[j + 1] <= cfg.motion_floor_speed;
            disp > cfg.jump_distance_min && still_before && still_after
        })
        .collect()
}

/// Maximal runs of consecutive `true` entries as inclusive index pairs.
fn runs(flags: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, &f) in flags.iter().enumerate() {
        match (f, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, flags.len() - 1));
    }
    out
}

/// Episodes where `|a|` stays above the threshold for at least
/// `min_episode_ms`. Severity is the episode duration in seconds, so a long
/// gentle ramp outranks an instantaneous jump in speed.
pub fn detect_acceleration_episodes(traj: &[TrajectorySample], cfg: &ComfortConfig) -> Result<Vec<ComfortFinding>> {
    require_samples(traj)?;
    let acc = estimate_acceleration(traj);
    let jumps = jump_segments(traj, cfg);
    let over: Vec<bool> = acc
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let touches_jump = (i > 0 && jumps[i - 1]) || jumps.get(i).copied().unwrap_or(false);
            !touches_jump && a.is_some_and(|a| a.length() > cfg.accel_threshold)
        })
        .collect();

    let mut findings = Vec::new();
    for (s, e) in runs(&over) {
        let start = traj[s].t_ms;
        let end = traj[e].t_ms;
        let duration = end - start;
        if duration < cfg.min_episode_ms {
            continue;
        }
        let peak = (s..=e).filter_map(|i| acc[i].map(Vec3::length)).fold(0.0, f64::max);
        findings.push(ComfortFinding {
            rule: ComfortRule::AccelerationRamp,
            start_ms: start,
            end_ms: end,
            severity: duration / 1000.0,
            detail: format!(
                "sustained acceleration for {:.3} s (peak {:.3} m/s^2)",
                duration / 1000.0,
                peak
            ),
        });
    }
    Ok(findings)
}

/// Frames slower than `drop_factor · target_frame_ms`; consecutive drops
/// merge into one episode whose severity is the number of dropped frames.
pub fn detect_frame_drops(traj: &[TrajectorySample], cfg: &ComfortConfig) -> Result<Vec<ComfortFinding>> {
    if cfg.target_frame_ms.is_nan() || cfg.target_frame_ms <= 0.0 {
        return Err(Error::validation("target_frame_ms", "must be > 0"));
    }
    let limit = cfg.drop_factor * cfg.target_frame_ms;
    let dropped: Vec<bool> = traj.iter().map(|s| s.frame_time_ms > limit).collect();
    Ok(runs(&dropped)
        .into_iter()
        .map(|(s, e)| {
            let worst = traj[s..=e].iter().map(|x| x.frame_time_ms).fold(0.0, f64::max);
            ComfortFinding {
                rule: ComfortRule::FrameDrop,
                start_ms: traj[s].t_ms,
                end_ms: traj[e].t_ms,
                severity: (e - s + 1) as f64,
                detail: format!("{} slow frame(s) (worst {:.3} ms)", e - s + 1, worst),
            }
        })
        .collect())
}

/// Camera motion not initiated by the user, one finding per contiguous run
/// of moving segments whose starting sample has `user_initiated = false`.
/// Severity is the run duration in seconds.
fn detect_uncontrolled(
    traj: &[TrajectorySample],
    speeds: &[f64],
    angular: &[f64],
    jumps: &[bool],
    cfg: &ComfortConfig,
) -> Vec<ComfortFinding> {
    let flags: Vec<bool> = (0..speeds.len())
        .map(|j| {
            let translating = speeds[j] > cfg.motion_floor_speed && !jumps[j];
            let turning = angular[j] > cfg.motion_floor_angular;
            (translating || turning) && !traj[j].user_initiated
        })
        .collect();
    runs(&flags)
        .into_iter()
        .map(|(s, e)| {
            let start = traj[s].t_ms;
            let end = traj[e + 1].t_ms;
            ComfortFinding {
                rule: ComfortRule::UncontrolledCamera,
                start_ms: start,
                end_ms: end,
                severity: (end - start) / 1000.0,
                detail: format!("camera moved without user input for {:.3} s", (end - start) / 1000.0),
            }
        })
        .collect()
}

/// Sample-to-sample camera FOV changes above the threshold. Severity is the
/// accumulated change in degrees.
fn detect_fov_changes(traj: &[TrajectorySample], cfg: &ComfortConfig) -> Vec<ComfortFinding> {
    let deltas: Vec<f64> = traj.windows(2).map(|w| (w[1].fov_deg - w[0].fov_deg).abs()).collect();
    let flags: Vec<bool> = deltas.iter().map(|&d| d > cfg.fov_delta_threshold_deg).collect();
    runs(&flags)
        .into_iter()
        .map(|(s, e)| {
            let total: f64 = deltas[s..=e].iter().sum();
            ComfortFinding {
                rule: ComfortRule::FovManipulation,
                start_ms: traj[s].t_ms,
                end_ms: traj[e + 1].t_ms,
                severity: total,
                detail: format!(
                    "camera FOV changed by {:.3} deg (per-sample delta rule; no validated threshold)",
                    total
                ),
            }
        })
        .collect()
}

/// Smooth translation lasting longer than `walk_episode_ms`. Teleport jumps
/// break an episode and never count as locomotion. Severity is the duration
/// in seconds.
fn detect_locomotion(
    traj: &[TrajectorySample],
    speeds: &[f64],
    jumps: &[bool],
    cfg: &ComfortConfig,
) -> Vec<ComfortFinding> {
    let flags: Vec<bool> = (0..speeds.len())
        .map(|j| speeds[j] > cfg.motion_floor_speed && !jumps[j])
        .collect();
    runs(&flags)
        .into_iter()
        .filter_map(|(s, e)| {
            let start = traj[s].t_ms;
            let end = traj[e + 1].t_ms;
            let duration = end - start;
            (duration > cfg.walk_episode_ms).then(|| ComfortFinding {
                rule: ComfortRule::ContinuousLocomotion,
                start_ms: start,
                end_ms: end,
                severity: duration / 1000.0,
                detail: format!("continuous locomotion for {:.3} s", duration / 1000.0),
            })
        })
        .collect()
}

/// One finding when the session outlasts `max_session_ms`; the window runs
/// from the limit to the end of the session. Severity is duration / limit.
fn detect_session_length(traj: &[TrajectorySample], meta: &SessionMeta, cfg: &ComfortConfig) -> Option<ComfortFinding> {
    (meta.duration_ms > cfg.max_session_ms).then(|| {
        let t0 = traj.first().map_or(0.0, |s| s.t_ms);
        ComfortFinding {
            rule: ComfortRule::SessionDuration,
            start_ms: t0 + cfg.max_session_ms,
            end_ms: t0 + meta.duration_ms,
            severity: meta.duration_ms / cfg.max_session_ms,
            detail: format!(
                "session of {:.1} min exceeds {:.1} min",
                meta.duration_ms / 60_000.0,
                cfg.max_session_ms / 60_000.0
            ),
        }
    })
}

pub fn analyze_trajectory(traj: &[TrajectorySample], meta: &SessionMeta, cfg: &ComfortConfig) -> Result<ComfortReport> {
    require_samples(traj)?;
    validate_trajectory(traj)?;
    cfg.validate()?;

    let speeds = segment_speeds(traj);
    let angular = segment_angular_speeds(traj);
    let jumps = jump_segments(traj, cfg);

    let mut findings = detect_acceleration_episodes(traj, cfg)?;
    findings.extend(detect_uncontrolled(traj, &speeds, &angular, &jumps, cfg));
    findings.extend(detect_fov_changes(traj, cfg));
    findings.extend(detect_frame_drops(traj, cfg)?);
    findings.extend(detect_session_length(traj, meta, cfg));
    findings.extend(detect_locomotion(traj, &speeds, &jumps, cfg));
    Ok(ComfortReport::new(findings))
}
