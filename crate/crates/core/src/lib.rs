//! Dynamic focus selection for stereo head-mounted displays.
//!
//! The crate picks which scene object a viewer is most likely attending to
//! (a cone of weighted metric rays from the midpoint between the eyes,
//! combined with depth and a designer-assigned value), smooths focus changes
//! over time, checks recorded camera trajectories against comfort guidelines,
//! and scores simulator sickness questionnaires. Everything is headless and
//! deterministic so runs can be replayed from text files.

pub mod attention;
pub mod comfort;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod geometry;
pub mod level;
pub mod rays;
pub mod scenario;
pub mod ssq;

pub use attention::{
    depth_metric, importance, select_focus, DepthProfile, FocusCandidate, HeuristicWeights, Selection,
};
pub use comfort::{
    analyze_trajectory, detect_acceleration_episodes, detect_frame_drops, ComfortConfig, ComfortFinding, ComfortReport,
    ComfortRule, SessionMeta, TrajectorySample,
};
pub use config::SimConfig;
pub use dynamics::{blur_amount, step, BlurConfig, DofParams, FocusConfig, FocusSample, FocusState};
pub use error::{Error, Result};
pub use geometry::{
    derive_mid_camera, ray_sphere_intersect, roi_contains, MidCamera, ObjectId, Roi, SceneObject, StereoRig, Vec3,
};
pub use level::level_for_score;
pub use rays::{compute_rm, generate_metric_rays, layer_weight, RayConfig, WeightedRay};
pub use scenario::{run_scenario, run_scenario_files, score_ssq_files, ScenarioOutput, TimelineRow};
pub use ssq::{protocol_report, score_questionnaire, Profile, ProtocolReport, ProtocolSession, SsqResponse, SsqScore};
