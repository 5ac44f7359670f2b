//! Deterministic scenario replay: resample a recorded trajectory to a fixed
//! tick, select and smooth focus at every tick, analyze comfort, and render
//! everything into one text document.

use std::fmt::Write as _;
use std::path::Path;

use crate::attention::select_focus_with;
use crate::comfort::{analyze_trajectory, ComfortReport, SessionMeta, TrajectorySample};
use crate::config::SimConfig;
use crate::dynamics::{step, FocusSample, FocusState};
use crate::error::{Error, Result};
use crate::format::{fmt_real, load_profile, load_scene, load_ssq_response, load_trajectory};
use crate::geometry::{derive_mid_camera, ObjectId, Roi, SceneObject, StereoRig, Vec3};
use crate::ssq::{protocol_report, ProtocolReport, ProtocolSession, SsqScore};

pub const TIMELINE_HEADER: &str = "t_ms,selected_object_id,importance,rm,d,v,focal_distance_m,in_transition";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub t_ms: f64,
    pub position: Vec3,
    pub forward: Vec3,
    pub up: Vec3,
}

impl From<&TrajectorySample> for Pose {
    fn from(s: &TrajectorySample) -> Self {
        Pose {
            t_ms: s.t_ms,
            position: s.position,
            forward: s.forward,
            up: s.up,
        }
    }
}

/// Poses at `t0 + m·tick_ms` for every tick inside the trajectory span.
/// Position is interpolated linearly, forward and up spherically (up is then
/// re-orthogonalized). Ticks that land on a sample return it unchanged.
pub fn resample(traj: &[TrajectorySample], tick_ms: f64) -> Vec<Pose> {
    let Some(first) = traj.first() else {
        return Vec::new();
    };
    let t0 = first.t_ms;
    let t_end = traj[traj.len() - 1].t_ms;
    let mut poses = Vec::new();
    let mut seg = 0;
    for m in 0u64.. {
        let t = t0 + m as f64 * tick_ms;
        if t > t_end {
            break;
        }
        while seg + 1 < traj.len() && traj[seg + 1].t_ms <= t {
            seg += 1;
        }
        let a = &traj[seg];
        if a.t_ms == t || seg + 1 == traj.len() {
            poses.push(Pose {
                t_ms: t,
                ..Pose::from(a)
            });
            continue;
        }
        let b = &traj[seg + 1];
        let frac = (t - a.t_ms) / (b.t_ms - a.t_ms);
        let forward = a.forward.slerp(b.forward, frac);
        let forward = forward.try_normalize().unwrap_or(a.forward);
        let up = a.up.slerp(b.up, frac);
        let up = (up - forward * forward.dot(up)).try_normalize().unwrap_or(a.up);
        poses.push(Pose {
            t_ms: t,
            position: a.position.lerp(b.position, frac),
            forward,
            up,
        });
    }
    poses
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimelineRow {
    pub t_ms: f64,
    pub selected_object_id: Option<ObjectId>,
    pub importance: Option<f64>,
    pub rm: Option<f64>,
    pub d: Option<f64>,
    pub v: Option<f64>,
    pub focal_distance_m: f64,
    pub in_transition: bool,
}

impl TimelineRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), fmt_real);
        format!(
            "{},{},{},{},{},{},{},{}",
            fmt_real(self.t_ms),
            self.selected_object_id
                .map_or_else(|| "none".to_string(), |id| id.to_string()),
            opt(self.importance),
            opt(self.rm),
            opt(self.d),
            opt(self.v),
            fmt_real(self.focal_distance_m),
            self.in_transition
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutput {
    pub timeline: Vec<TimelineRow>,
    pub comfort: ComfortReport,
}

/// Runs the tick loop and the comfort analysis. With `focus_enabled = false`
/// no selection happens and the focal distance stays at its initial value.
pub fn run_scenario(
    scene: &[SceneObject],
    traj: &[TrajectorySample],
    cfg: &SimConfig,
    focus_enabled: bool,
) -> Result<ScenarioOutput> {
    cfg.validate()?;
    let ray_cfg = cfg.ray_config()?;
    let weights = cfg.weights()?;
    let focus_cfg = cfg.focus_config();
    let roi_half_angle = cfg.roi_half_angle_deg.to_radians();

    let mut state = FocusState::new(cfg.initial_focal_m);
    let mut timeline = Vec::new();
    for pose in resample(traj, cfg.tick_ms) {
        let mut row = TimelineRow {
            t_ms: pose.t_ms,
            selected_object_id: None,
            importance: None,
            rm: None,
            d: None,
            v: None,
            focal_distance_m: state.focal_distance,
            in_transition: false,
        };
        if focus_enabled {
            let rig = StereoRig::from_head_pose(pose.position, pose.forward, pose.up, cfg.ipd_m)?;
            let cam = derive_mid_camera(&rig)?;
            let roi = Roi::for_camera(&cam, roi_half_angle, cfg.roi_z_far_m)?;
            let selection = select_focus_with(scene, &rig, &roi, &ray_cfg, &weights, cfg.depth_profile)?;
            let sample = selection.focus.map(|c| {
                row.selected_object_id = Some(c.object_id);
                row.importance = Some(c.importance);
                row.rm = Some(c.rm);
                row.d = Some(c.depth);
                row.v = Some(c.value);
                FocusSample {
                    object_id: c.object_id,
                    distance: c.distance,
                }
            });
            state = step(&state, sample, cfg.tick_ms, &focus_cfg)?;
            row.focal_distance_m = state.focal_distance;
            row.in_transition = state.in_transition();
        }
        timeline.push(row);
    }

    let meta = SessionMeta {
        duration_ms: traj[traj.len() - 1].t_ms - traj[0].t_ms,
    };
    let comfort = analyze_trajectory(traj, &meta, &cfg.comfort)?;
    Ok(ScenarioOutput { timeline, comfort })
}

pub fn render_comfort(report: &ComfortReport) -> String {
    let mut out = String::new();
    out.push_str("severity_kind = heuristic severity\n");
    for (rule, count) in &report.counts {
        let _ = writeln!(out, "count.{rule} = {count}");
    }
    out.push_str("rule,start_ms,end_ms,heuristic_severity,detail\n");
    for f in &report.findings {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            f.rule,
            fmt_real(f.start_ms),
            fmt_real(f.end_ms),
            fmt_real(f.severity),
            f.detail.replace(',', ";")
        );
    }
    out
}

/// Output document: CONFIG, TIMELINE and COMFORT sections, LF line endings.
pub fn render_document(cfg: &SimConfig, focus_enabled: bool, output: &ScenarioOutput) -> String {
    let mut doc = String::new();
    doc.push_str("[CONFIG]\n");
    doc.push_str(&cfg.to_text());
    let _ = writeln!(doc, "focus_enabled = {focus_enabled}");
    doc.push_str("\n[TIMELINE]\n");
    doc.push_str(TIMELINE_HEADER);
    doc.push('\n');
    for row in &output.timeline {
        doc.push_str(&row.to_csv());
        doc.push('\n');
    }
    doc.push_str("\n[COMFORT]\n");
    doc.push_str(&render_comfort(&output.comfort));
    doc
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Loads the three input files, runs the scenario and writes the document.
pub fn run_scenario_files(
    scene_path: &Path,
    trajectory_path: &Path,
    config_path: &Path,
    out_path: &Path,
    focus_enabled: bool,
) -> Result<ScenarioOutput> {
    let cfg = SimConfig::load(config_path)?;
    let scene = load_scene(scene_path)?;
    let traj = load_trajectory(trajectory_path)?;
    let output = run_scenario(&scene, &traj, &cfg, focus_enabled)?;
    write_text(out_path, &render_document(&cfg, focus_enabled, &output))?;
    Ok(output)
}

/// SSQ scores print with two decimals.
fn fmt_score(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn score_row(label: &str, s: &SsqScore) -> String {
    format!(
        "{label},{},{},{},{}\n",
        fmt_score(s.nausea),
        fmt_score(s.oculomotor),
        fmt_score(s.disorientation),
        fmt_score(s.total)
    )
}

/// Output document with PROFILE and SSQ sections.
pub fn render_protocol(report: &ProtocolReport) -> String {
    let p = &report.profile;
    let mut doc = String::new();
    doc.push_str("[PROFILE]\n");
    let _ = writeln!(doc, "name = {}", p.name);
    let _ = writeln!(doc, "age = {}", p.age);
    let _ = writeln!(doc, "gender = {}", p.gender);
    let _ = writeln!(doc, "background = {}", p.academic_background);
    doc.push_str("\n[SSQ]\n");
    doc.push_str("questionnaire,nausea,oculomotor,disorientation,total\n");
    for (label, s) in ["q1", "q2", "q3"].iter().zip(&report.scores) {
        doc.push_str(&score_row(label, s));
    }
    doc.push_str(&score_row("q2-q1", &report.deltas[0]));
    doc.push_str(&score_row("q3-q1", &report.deltas[1]));
    doc
}

pub fn score_ssq_files(
    q1_path: &Path,
    q2_path: &Path,
    q3_path: &Path,
    profile_path: &Path,
    out_path: &Path,
) -> Result<ProtocolReport> {
    let session = ProtocolSession {
        profile: load_profile(profile_path)?,
        pre_exposure: load_ssq_response(q1_path)?,
        after_first: load_ssq_response(q2_path)?,
        after_second: load_ssq_response(q3_path)?,
    };
    let report = protocol_report(&session);
    write_text(out_path, &render_protocol(&report))?;
    Ok(report)
}
