//! Temporal focus model: linear refocus transitions, persistence after the
//! selection drops out, and the depth-of-field blur amount.

use crate::error::{Error, Result};
use crate::geometry::ObjectId;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusConfig {
    pub refocus_ms: f64,
    pub persistence_hold_ms: f64,
}

impl Default for FocusConfig {
    fn default() -> Self {
        FocusConfig {
            refocus_ms: 500.0,
            persistence_hold_ms: 300.0,
        }
    }
}

impl FocusConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.refocus_ms > 0.0 && self.refocus_ms.is_finite()) {
            return Err(Error::validation("refocus_ms", "must be positive"));
        }
        if !(self.persistence_hold_ms >= 0.0 && self.persistence_hold_ms.is_finite()) {
            return Err(Error::validation("persistence_hold_ms", "must be >= 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub from_distance: f64,
    pub to_distance: f64,
    pub elapsed_ms: f64,
    pub duration_ms: f64,
}

impl Transition {
    pub fn progress(&self) -> f64 {
        (self.elapsed_ms / self.duration_ms).clamp(0.0, 1.0)
    }

    pub fn value(&self) -> f64 {
        let p = self.progress();
        if p >= 1.0 {
            self.to_distance
        } else {
            self.from_distance + (self.to_distance - self.from_distance) * p
        }
    }
}

/// What the selector saw this tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusSample {
    pub object_id: ObjectId,
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusState {
    pub current_target: Option<ObjectId>,
    pub focal_distance: f64,
    pub transition: Option<Transition>,
    pub persistence_elapsed_ms: f64,
}

impl FocusState {
    pub fn new(focal_distance: f64) -> Self {
        FocusState {
            current_target: None,
            focal_distance,
            transition: None,
            persistence_elapsed_ms: 0.0,
        }
    }

    pub fn in_transition(&self) -> bool {
        self.transition.is_some()
    }

    fn advance(&mut self, dt_ms: f64) {
        if let Some(mut tr) = self.transition {
            tr.elapsed_ms += dt_ms;
            self.focal_distance = tr.value();
            self.transition = if tr.elapsed_ms >= tr.duration_ms {
                None
            } else {
                Some(tr)
            };
        }
    }
}

/// Advances the focus state by one tick of `dt_ms`.
///
/// * Same target: any running transition continues; the persistence clock
///   resets. If the target's distance moved, the transition end (or, when
///   settled, the focal distance itself) follows it.
/// * New target: a fresh `refocus_ms` transition starts from the current
///   focal distance and is advanced by `dt_ms` in the same step.
/// * No selection: the target is held for `persistence_hold_ms`, then
///   dropped; the focal distance stays where it is.
pub fn step(state: &FocusState, selection: Option<FocusSample>, dt_ms: f64, cfg: &FocusConfig) -> Result<FocusState> {
    if !(dt_ms > 0.0 && dt_ms.is_finite()) {
        return Err(Error::InvalidArgument(format!("dt_ms must be positive, got {dt_ms}")));
    }
    let mut next = *state;
    match selection {
        Some(sel) if state.current_target == Some(sel.object_id) => {
            next.persistence_elapsed_ms = 0.0;
            match next.transition.as_mut() {
                Some(tr) => tr.to_distance = sel.distance,
                None => next.focal_distance = sel.distance,
            }
            next.advance(dt_ms);
        }
        Some(sel) => {
            next.current_target = Some(sel.object_id);
            next.persistence_elapsed_ms = 0.0;
            next.transition = Some(Transition {
                from_distance: state.focal_distance,
                to_distance: sel.distance,
                elapsed_ms: 0.0,
                duration_ms: cfg.refocus_ms,
            });
            next.advance(dt_ms);
        }
        None => {
            if next.current_target.is_some() {
                next.persistence_elapsed_ms += dt_ms;
                if next.persistence_elapsed_ms >= cfg.persistence_hold_ms {
                    next.persistence_elapsed_ms = cfg.persistence_hold_ms;
                    next.current_target = None;
                    next.transition = None;
                } else {
                    next.advance(dt_ms);
                }
            }
        }
    }
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlurConfig {
    pub blur_per_meter: f64,
    pub max_blur: f64,
}

impl Default for BlurConfig {
    fn default() -> Self {
        BlurConfig {
            blur_per_meter: 0.1,
            max_blur: 1.0,
        }
    }
}

/// Focal plane plus blur falloff handed to a renderer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DofParams {
    pub focal_distance: f64,
    pub blur: BlurConfig,
}

impl DofParams {
    pub fn blur_at(&self, depth: f64) -> f64 {
        blur_amount(depth, self.focal_distance, &self.blur)
    }
}

/// `min(|depth − focal| · blur_per_meter, max_blur)`
pub fn blur_amount(depth: f64, focal_distance: f64, cfg: &BlurConfig) -> f64 {
    ((depth - focal_distance).abs() * cfg.blur_per_meter).min(cfg.max_blur)
}
