//! Python module `focusray`. Vectors cross the boundary as `(x, y, z)` tuples.

use std::path::PathBuf;

use focusray_core as core;
use focusray_core::format::load_trajectory;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

type V3 = (f64, f64, f64);

fn v(t: V3) -> core::Vec3 {
    core::Vec3::new(t.0, t.1, t.2)
}

fn t(v: core::Vec3) -> V3 {
    (v.x, v.y, v.z)
}

fn py_err(err: core::Error) -> PyErr {
    match err {
        core::Error::Io { .. } => PyIOError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

#[pyclass(name = "SceneObject", from_py_object)]
#[derive(Clone)]
struct PySceneObject {
    inner: core::SceneObject,
}

#[pymethods]
impl PySceneObject {
    #[new]
    #[pyo3(signature = (id, center, radius, value, label = String::new()))]
    fn new(id: u32, center: V3, radius: f64, value: f64, label: String) -> PyResult<Self> {
        let inner = core::SceneObject::new(id, v(center), radius, value, label).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn id(&self) -> u32 {
        self.inner.id
    }

    #[getter]
    fn center(&self) -> V3 {
        t(self.inner.center)
    }

    #[getter]
    fn radius(&self) -> f64 {
        self.inner.radius
    }

    #[getter]
    fn value(&self) -> f64 {
        self.inner.value
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label.clone()
    }

    fn __repr__(&self) -> String {
        let o = &self.inner;
        format!(
            "SceneObject(id={}, center={:?}, radius={}, value={}, label={:?})",
            o.id,
            t(o.center),
            o.radius,
            o.value,
            o.label
        )
    }
}

/// Head pose plus the cone settings shared by the ray and selection calls.
#[pyclass(name = "Viewer", from_py_object)]
#[derive(Clone)]
struct PyViewer {
    rig: core::StereoRig,
    #[pyo3(get)]
    layers: usize,
    #[pyo3(get)]
    rays_per_layer: usize,
    #[pyo3(get)]
    ray_half_angle_deg: f64,
    #[pyo3(get)]
    roi_half_angle_deg: f64,
    #[pyo3(get)]
    z_far: f64,
}

impl PyViewer {
    fn camera(&self) -> PyResult<core::MidCamera> {
        core::derive_mid_camera(&self.rig).map_err(py_err)
    }

    fn ray_config(&self) -> PyResult<core::RayConfig> {
        core::RayConfig::new(self.layers, self.rays_per_layer, self.ray_half_angle_deg.to_radians()).map_err(py_err)
    }

    fn roi(&self) -> PyResult<core::Roi> {
        core::Roi::for_camera(&self.camera()?, self.roi_half_angle_deg.to_radians(), self.z_far).map_err(py_err)
    }
}

#[pymethods]
impl PyViewer {
    #[new]
    #[pyo3(signature = (
        position = (0.0, 0.0, 0.0),
        forward = (0.0, 0.0, -1.0),
        up = (0.0, 1.0, 0.0),
        ipd = 0.064,
        layers = 3,
        rays_per_layer = 16,
        ray_half_angle_deg = 10.0,
        roi_half_angle_deg = 30.0,
        z_far = 100.0,
    ))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        position: V3,
        forward: V3,
        up: V3,
        ipd: f64,
        layers: usize,
        rays_per_layer: usize,
        ray_half_angle_deg: f64,
        roi_half_angle_deg: f64,
        z_far: f64,
    ) -> PyResult<Self> {
        let rig = core::StereoRig::from_head_pose(v(position), v(forward), v(up), ipd).map_err(py_err)?;
        let viewer = Self {
            rig,
            layers,
            rays_per_layer,
            ray_half_angle_deg,
            roi_half_angle_deg,
            z_far,
        };
        viewer.ray_config()?;
        viewer.roi()?;
        Ok(viewer)
    }

    #[getter]
    fn mid_point(&self) -> PyResult<V3> {
        Ok(t(self.camera()?.position))
    }

    /// `(layer, direction, weight)` for every metric ray, layer-major.
    fn rays(&self) -> PyResult<Vec<(usize, V3, f64)>> {
        let rays = core::generate_metric_rays(&self.ray_config()?, &self.camera()?);
        Ok(rays.iter().map(|r| (r.layer, t(r.direction), r.weight)).collect())
    }

    fn compute_rm(&self, scene: Vec<PySceneObject>, target: u32) -> PyResult<f64> {
        let cam = self.camera()?;
        let rays = core::generate_metric_rays(&self.ray_config()?, &cam);
        let scene: Vec<_> = scene.into_iter().map(|o| o.inner).collect();
        core::compute_rm(&cam, &rays, &scene, target).map_err(py_err)
    }

    fn in_roi(&self, object: &PySceneObject) -> PyResult<bool> {
        Ok(core::roi_contains(&self.roi()?, &object.inner))
    }

    /// Returns `(focus, candidates)`; each entry is
    /// `(object_id, rm, depth, value, importance, distance)`.
    #[pyo3(signature = (scene, weights = (0.5, 0.3, 0.2)))]
    #[allow(clippy::type_complexity)]
    fn select_focus(&self, scene: Vec<PySceneObject>, weights: V3) -> PyResult<(Option<Candidate>, Vec<Candidate>)> {
        let weights = core::HeuristicWeights::new(weights.0, weights.1, weights.2).map_err(py_err)?;
        let scene: Vec<_> = scene.into_iter().map(|o| o.inner).collect();
        let sel = core::select_focus(&scene, &self.rig, &self.roi()?, &self.ray_config()?, &weights).map_err(py_err)?;
        Ok((
            sel.focus.map(candidate),
            sel.candidates.into_iter().map(candidate).collect(),
        ))
    }
}

type Candidate = (u32, f64, f64, f64, f64, f64);

fn candidate(c: core::FocusCandidate) -> Candidate {
    (c.object_id, c.rm, c.depth, c.value, c.importance, c.distance)
}

#[pyclass(name = "FocusState", from_py_object)]
#[derive(Clone)]
struct PyFocusState {
    inner: core::FocusState,
    cfg: core::FocusConfig,
}

#[pymethods]
impl PyFocusState {
    #[new]
    #[pyo3(signature = (focal_distance = 1.0, refocus_ms = 500.0, persistence_hold_ms = 300.0))]
    fn new(focal_distance: f64, refocus_ms: f64, persistence_hold_ms: f64) -> PyResult<Self> {
        let cfg = core::FocusConfig {
            refocus_ms,
            persistence_hold_ms,
        };
        cfg.validate().map_err(py_err)?;
        Ok(Self {
            inner: core::FocusState::new(focal_distance),
            cfg,
        })
    }

    /// Advances by `dt_ms`; `selection` is `(object_id, distance)` or None.
    #[pyo3(signature = (selection, dt_ms))]
    fn step(&mut self, selection: Option<(u32, f64)>, dt_ms: f64) -> PyResult<f64> {
        let sample = selection.map(|(object_id, distance)| core::FocusSample { object_id, distance });
        self.inner = core::step(&self.inner, sample, dt_ms, &self.cfg).map_err(py_err)?;
        Ok(self.inner.focal_distance)
    }

    #[getter]
    fn focal_distance(&self) -> f64 {
        self.inner.focal_distance
    }

    #[getter]
    fn current_target(&self) -> Option<u32> {
        self.inner.current_target
    }

    #[getter]
    fn in_transition(&self) -> bool {
        self.inner.in_transition()
    }
}

#[pyfunction]
fn layer_weight(layer: usize, layers: usize) -> PyResult<f64> {
    core::layer_weight(layer, layers).map_err(py_err)
}

#[pyfunction]
fn ray_sphere_intersect(origin: V3, direction: V3, object: &PySceneObject) -> Option<f64> {
    core::ray_sphere_intersect(v(origin), v(direction), &object.inner)
}

#[pyfunction]
#[pyo3(signature = (depth, focal_distance, blur_per_meter = 0.1, max_blur = 1.0))]
fn blur_amount(depth: f64, focal_distance: f64, blur_per_meter: f64, max_blur: f64) -> f64 {
    core::blur_amount(
        depth,
        focal_distance,
        &core::BlurConfig {
            blur_per_meter,
            max_blur,
        },
    )
}

/// `(nausea, oculomotor, disorientation, total)` for 16 ratings in 0..=3.
#[pyfunction]
fn score_questionnaire(ratings: Vec<u8>) -> PyResult<(f64, f64, f64, f64)> {
    let resp = core::SsqResponse::from_slice(&ratings).map_err(py_err)?;
    let s = core::score_questionnaire(&resp);
    Ok((s.nausea, s.oculomotor, s.disorientation, s.total))
}

#[pyfunction]
fn level_for_score(score: u64) -> u8 {
    core::level_for_score(score)
}

type Finding = (String, f64, f64, f64, String);

/// Comfort findings for a trajectory file as `(rule, start_ms, end_ms, severity, detail)`.
#[pyfunction]
#[pyo3(signature = (trajectory, duration_ms = None))]
fn analyze_trajectory(trajectory: PathBuf, duration_ms: Option<f64>) -> PyResult<Vec<Finding>> {
    let traj = load_trajectory(&trajectory).map_err(py_err)?;
    let span = traj.last().unwrap().t_ms - traj[0].t_ms;
    let meta = core::SessionMeta {
        duration_ms: duration_ms.unwrap_or(span),
    };
    let report = core::analyze_trajectory(&traj, &meta, &core::ComfortConfig::default()).map_err(py_err)?;
    Ok(report
        .findings
        .into_iter()
        .map(|f| (f.rule.name().to_string(), f.start_ms, f.end_ms, f.severity, f.detail))
        .collect())
}

/// Same as `focusray run`; returns the number of timeline rows.
#[pyfunction]
#[pyo3(signature = (scene, trajectory, config, out, focus_enabled = true))]
fn run_scenario(
    scene: PathBuf,
    trajectory: PathBuf,
    config: PathBuf,
    out: PathBuf,
    focus_enabled: bool,
) -> PyResult<usize> {
    let output = core::run_scenario_files(&scene, &trajectory, &config, &out, focus_enabled).map_err(py_err)?;
    Ok(output.timeline.len())
}

#[pyfunction]
fn score_ssq_files(q1: PathBuf, q2: PathBuf, q3: PathBuf, profile: PathBuf, out: PathBuf) -> PyResult<()> {
    core::score_ssq_files(&q1, &q2, &q3, &profile, &out)
        .map(|_| ())
        .map_err(py_err)
}

#[pymodule]
fn focusray(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySceneObject>()?;
    m.add_class::<PyViewer>()?;
    m.add_class::<PyFocusState>()?;
    m.add_function(wrap_pyfunction!(layer_weight, m)?)?;
    m.add_function(wrap_pyfunction!(ray_sphere_intersect, m)?)?;
    m.add_function(wrap_pyfunction!(blur_amount, m)?)?;
    m.add_function(wrap_pyfunction!(score_questionnaire, m)?)?;
    m.add_function(wrap_pyfunction!(level_for_score, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(score_ssq_files, m)?)?;
    Ok(())
}
