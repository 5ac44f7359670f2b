//! Vector math, the stereo rig and its midpoint camera, ray/sphere queries
//! and region-of-interest membership.
//!
//! All geometry is double precision in world units (meters). Scene objects
//! are bounding spheres; the region of interest is a cone with its apex at the
//! midpoint camera, truncated at a far distance.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Tolerance on unit-vector lengths.
pub const UNIT_TOLERANCE: f64 = 1e-9;
/// Tolerance on `forward · up` for a valid rig.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-6;

pub type ObjectId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn length_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn length(self) -> f64 {
        self.length_squared().sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).length()
    }

    /// Unit vector in the same direction, or `None` for zero/non-finite input.
    pub fn try_normalize(self) -> Option<Vec3> {
        let len = self.length();
        if len > 0.0 && len.is_finite() {
            Some(self / len)
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn is_unit(self) -> bool {
        (self.length() - 1.0).abs() <= UNIT_TOLERANCE
    }

    pub fn lerp(self, other: Vec3, t: f64) -> Vec3 {
        self + (other - self) * t
    }

    /// Component-wise midpoint.
    pub fn midpoint(self, other: Vec3) -> Vec3 {
        Vec3::new(
            (self.x + other.x) * 0.5,
            (self.y + other.y) * 0.5,
            (self.z + other.z) * 0.5,
        )
    }

    /// Angle between two non-zero vectors in radians, in `[0, π]`.
    pub fn angle_to(self, other: Vec3) -> f64 {
        self.cross(other).length().atan2(self.dot(other))
    }

    /// Spherical interpolation between unit vectors. Falls back to a
    /// normalized lerp when the vectors are (anti)parallel.
    pub fn slerp(self, other: Vec3, t: f64) -> Vec3 {
        let angle = self.angle_to(other);
        let sin = angle.sin();
        if sin.abs() < 1e-9 {
            return self.lerp(other, t).try_normalize().unwrap_or(self);
        }
        let a = ((1.0 - t) * angle).sin() / sin;
        let b = (t * angle).sin() / sin;
        self * a + other * b
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Left and right optical centers of a stereo HMD plus the shared view frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StereoRig {
    left: Vec3,
    right: Vec3,
    up: Vec3,
    forward: Vec3,
}

impl StereoRig {
    pub fn new(left: Vec3, right: Vec3, up: Vec3, forward: Vec3) -> Result<Self> {
        if !(left.is_finite() && right.is_finite() && up.is_finite() && forward.is_finite()) {
            return Err(Error::Geometry("rig has non-finite components".into()));
        }
        if left == right {
            return Err(Error::Geometry(
                "degenerate rig: left and right optical centers coincide".into(),
            ));
        }
        if !forward.is_unit() {
            return Err(Error::Geometry(format!(
                "rig forward is not unit length (|forward| = {})",
                forward.length()
            )));
        }
        if !up.is_unit() {
            return Err(Error::Geometry(format!(
                "rig up is not unit length (|up| = {})",
                up.length()
            )));
        }
        if forward.dot(up).abs() > ORTHOGONALITY_TOLERANCE {
            return Err(Error::Geometry(format!(
                "rig forward and up are not orthogonal (dot = {})",
                forward.dot(up)
            )));
        }
        Ok(StereoRig {
            left,
            right,
            up,
            forward,
        })
    }

    /// Builds a rig from a single head pose: the optical centers sit
    /// `ipd / 2` either side of `position` along `normalize(forward × up)`.
    pub fn from_head_pose(position: Vec3, forward: Vec3, up: Vec3, ipd: f64) -> Result<Self> {
        if !(ipd > 0.0 && ipd.is_finite()) {
            return Err(Error::Geometry(format!("ipd must be positive, got {ipd}")));
        }
        let side = forward
            .cross(up)
            .try_normalize()
            .ok_or_else(|| Error::Geometry("forward and up are parallel".into()))?;
        let half = side * (ipd * 0.5);
        StereoRig::new(position - half, position + half, up, forward)
    }

    pub fn left(&self) -> Vec3 {
        self.left
    }

    pub fn right(&self) -> Vec3 {
        self.right
    }

    pub fn up(&self) -> Vec3 {
        self.up
    }

    pub fn forward(&self) -> Vec3 {
        self.forward
    }
}

/// Virtual camera at the midpoint between the two optical centers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MidCamera {
    pub position: Vec3,
    pub forward: Vec3,
    pub up: Vec3,
}

impl MidCamera {
    /// `normalize(forward × up)`; the horizontal axis of the view frame.
    pub fn right(&self) -> Vec3 {
        self.forward.cross(self.up).try_normalize().unwrap_or(Vec3::X)
    }
}

/// Derives the midpoint camera of a rig.
///
/// The rig constructor already rejects `left == right`; the check is repeated
/// here because a `StereoRig` can be copied out of untrusted bindings.
pub fn derive_mid_camera(rig: &StereoRig) -> Result<MidCamera> {
    if rig.left == rig.right {
        return Err(Error::Geometry(
            "degenerate rig: left and right optical centers coincide".into(),
        ));
    }
    Ok(MidCamera {
        position: rig.left.midpoint(rig.right),
        forward: rig.forward,
        up: rig.up,
    })
}

/// A candidate of visual attention: bounding sphere plus designer value.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneObject {
    pub id: ObjectId,
    pub center: Vec3,
    pub radius: f64,
    pub value: f64,
    pub label: String,
}

impl SceneObject {
    pub fn new(id: ObjectId, center: Vec3, radius: f64, value: f64, label: impl Into<String>) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::validation(
                "center",
                format!("object {id}: center must be finite"),
            ));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::validation(
                "radius",
                format!("object {id}: radius must be positive, got {radius}"),
            ));
        }
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::validation(
                "value",
                format!("object {id}: value must lie in [0, 1], got {value}"),
            ));
        }
        Ok(SceneObject {
            id,
            center,
            radius,
            value,
            label: label.into(),
        })
    }
}

/// Smallest non-negative `t` with `|origin + t·direction − center| = radius`.
///
/// An origin inside (or on) the sphere is a hit at `t = 0`.
pub fn ray_sphere_intersect(origin: Vec3, direction: Vec3, object: &SceneObject) -> Option<f64> {
    let oc = origin - object.center;
    let c = oc.length_squared() - object.radius * object.radius;
    if c <= 0.0 {
        return Some(0.0);
    }
    let b = oc.dot(direction);
    // Outside the sphere and pointing away from it.
    if b > 0.0 {
        return None;
    }
    let disc = b * b - c;
    if disc < 0.0 {
        return None;
    }
    // c > 0 and b <= 0: both roots are non-negative; the near one is -b - sqrt(disc).
    // Written as c / q to avoid cancellation for distant spheres.
    let q = -b + disc.sqrt();
    Some(c / q)
}

/// Region of interest: a cone with apex at the midpoint camera, truncated at `z_far`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Roi {
    apex: Vec3,
    axis: Vec3,
    half_angle: f64,
    z_far: f64,
}

impl Roi {
    pub fn new(apex: Vec3, axis: Vec3, half_angle: f64, z_far: f64) -> Result<Self> {
        if !apex.is_finite() {
            return Err(Error::Geometry("roi apex must be finite".into()));
        }
        if !axis.is_unit() {
            return Err(Error::Geometry(format!(
                "roi axis is not unit length (|axis| = {})",
                axis.length()
            )));
        }
        if !(half_angle > 0.0 && half_angle < std::f64::consts::FRAC_PI_2) {
            return Err(Error::validation(
                "roi_half_angle",
                format!("must lie in (0, π/2) radians, got {half_angle}"),
            ));
        }
        if !(z_far > 0.0 && z_far.is_finite()) {
            return Err(Error::validation("roi_z_far", format!("must be positive, got {z_far}")));
        }
        Ok(Roi {
            apex,
            axis,
            half_angle,
            z_far,
        })
    }

    /// The ROI of a midpoint camera.
    pub fn for_camera(cam: &MidCamera, half_angle: f64, z_far: f64) -> Result<Self> {
        Roi::new(cam.position, cam.forward, half_angle, z_far)
    }

    pub fn apex(&self) -> Vec3 {
        self.apex
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    pub fn z_far(&self) -> f64 {
        self.z_far
    }

    /// Euclidean distance from `point` to the solid (infinite) cone.
    pub fn distance_to_cone(&self, point: Vec3) -> f64 {
        let v = point - self.apex;
        let axial = v.dot(self.axis);
        let radial = (v - self.axis * axial).length();
        let (sin, cos) = self.half_angle.sin_cos();
        if radial * cos <= axial * sin {
            // Inside the cone.
            return 0.0;
        }
        // Project onto the generatrix in the (axial, radial) half-plane.
        if axial * cos + radial * sin < 0.0 {
            v.length()
        } else {
            radial * cos - axial * sin
        }
    }
}

/// True iff the object's bounding sphere overlaps the ROI cone and its nearest
/// point along the axis lies within `z_far`. Partial overlap counts.
pub fn roi_contains(roi: &Roi, object: &SceneObject) -> bool {
    let axial = (object.center - roi.apex).dot(roi.axis);
    if axial - object.radius > roi.z_far {
        return false;
    }
    roi.distance_to_cone(object.center) <= object.radius
}
