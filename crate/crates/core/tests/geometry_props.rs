mod common;

use common::{march_hits, random_frame, random_unit, rotate};
use focusray_core::{derive_mid_camera, ray_sphere_intersect, roi_contains, Roi, SceneObject, StereoRig, Vec3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coord() -> impl Strategy<Value = f64> {
    -50.0..50.0f64
}

fn vec3() -> impl Strategy<Value = Vec3> {
    (coord(), coord(), coord()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

proptest! {
    #[test]
    fn midpoint_is_exact(left in vec3(), right in vec3()) {
        prop_assume!(left != right);
        let rig = StereoRig::new(left, right, Vec3::Y, Vec3::new(0.0, 0.0, -1.0)).unwrap();
        let m = derive_mid_camera(&rig).unwrap().position;
        let expect = (left + right) / 2.0;
        prop_assert!((m - expect).length() <= 1e-12);
    }

    #[test]
    fn reported_hits_lie_on_the_sphere(
        origin in vec3(),
        dir in vec3(),
        center in vec3(),
        radius in 0.01..20.0f64,
    ) {
        let dir = match dir.try_normalize() { Some(d) => d, None => return Ok(()) };
        let obj = SceneObject::new(1, center, radius, 0.0, "s").unwrap();
        if let Some(t) = ray_sphere_intersect(origin, dir, &obj) {
            prop_assert!(t >= 0.0);
            let gap = (origin + dir * t - center).length() - radius;
            if t == 0.0 {
                prop_assert!(gap <= 1e-6);
            } else {
                prop_assert!(gap.abs() <= 1e-6 * t.max(1.0), "gap {gap} at t {t}");
            }
        }
    }
}

#[test]
fn intersection_matches_marching_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    let mut hits = 0;
    while checked < 1000 {
        let origin = Vec3::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let center = Vec3::new(
            rng.gen_range(-6.0..6.0),
            rng.gen_range(-6.0..6.0),
            rng.gen_range(-6.0..6.0),
        );
        let radius = rng.gen_range(0.2..3.0);
        // Aim near the sphere so hits and misses are both common.
        let aim = center + random_unit(&mut rng) * rng.gen_range(0.0..2.5 * radius);
        let dir = match (aim - origin).try_normalize() {
            Some(d) if rng.gen_bool(0.9) => d,
            _ => random_unit(&mut rng),
        };
        let obj = SceneObject::new(1, center, radius, 0.0, "s").unwrap();

        // Guard band: skip near-tangent rays, where a fixed-step march cannot
        // resolve the chord.
        let oc = center - origin;
        let tca = oc.dot(dir).max(0.0);
        let closest = (oc - dir * tca).length();
        if (closest - radius).abs() < 1e-3 {
            continue;
        }
        let marched = march_hits(origin, dir, &obj, 25.0, 1e-3);
        let exact = ray_sphere_intersect(origin, dir, &obj).is_some();
        assert_eq!(
            exact, marched,
            "origin {origin:?} dir {dir:?} center {center:?} r {radius}"
        );
        hits += usize::from(exact);
        checked += 1;
    }
    // Make sure both outcomes were exercised.
    assert!(hits > 200 && hits < 800, "hits = {hits}");
}

#[test]
fn roi_membership_is_invariant_under_rigid_motion() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut inside = 0;
    for _ in 0..2000 {
        let (axis, _) = random_frame(&mut rng);
        let apex = Vec3::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        let roi = Roi::new(apex, axis, rng.gen_range(0.05..1.4), rng.gen_range(1.0..40.0)).unwrap();
        let center = apex + random_unit(&mut rng) * rng.gen_range(0.0..40.0);
        let obj = SceneObject::new(1, center, rng.gen_range(0.05..5.0), 0.5, "o").unwrap();

        let rot_axis = random_unit(&mut rng);
        let angle = rng.gen_range(-3.0..3.0);
        let shift = Vec3::new(
            rng.gen_range(-20.0..20.0),
            rng.gen_range(-20.0..20.0),
            rng.gen_range(-20.0..20.0),
        );
        let move_point = |p: Vec3| rotate(p, rot_axis, angle) + shift;

        let roi2 = Roi::new(
            move_point(apex),
            rotate(axis, rot_axis, angle).try_normalize().unwrap(),
            roi.half_angle(),
            roi.z_far(),
        )
        .unwrap();
        let obj2 = SceneObject::new(1, move_point(center), obj.radius, 0.5, "o").unwrap();

        // Rounding can only matter right at the boundary.
        let margin = (roi.distance_to_cone(center) - obj.radius).abs();
        let axial_margin = ((center - apex).dot(axis) - obj.radius - roi.z_far()).abs();
        if margin < 1e-9 || axial_margin < 1e-9 {
            continue;
        }
        let a = roi_contains(&roi, &obj);
        assert_eq!(a, roi_contains(&roi2, &obj2));
        inside += usize::from(a);
    }
    assert!(inside > 100 && inside < 1900, "inside = {inside}");
}
