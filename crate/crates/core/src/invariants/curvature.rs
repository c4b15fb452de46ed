use crate::curve::SampledCurve;
use crate::geom::turning_angle;

/// Turning angle at each vertex that has two incident edges.
///
/// For closed curves every vertex turns; for open curves the endpoints are
/// skipped and entry `k` belongs to vertex `k + 1`.
pub fn turning_angles(curve: &SampledCurve) -> Vec<f64> {
    let v = curve.vertices();
    let n = v.len();
    let angle_at = |i: usize| {
        let prev = v[(i + n - 1) % n];
        let next = v[(i + 1) % n];
        turning_angle(&(v[i] - prev), &(next - v[i]))
    };
    if curve.is_closed() {
        (0..n).map(angle_at).collect()
    } else {
        (1..n - 1).map(angle_at).collect()
    }
}

/// Total curvature of the polygon: the sum of its exterior angles.
pub fn total_curvature(curve: &SampledCurve) -> f64 {
    turning_angles(curve).iter().sum()
}

/// Turning accumulated at the interior vertices `start+1 ..= end-1` of the
/// vertex range `start..=end` (indices taken modulo the vertex count).
pub fn partial_curvature(curve: &SampledCurve, start: usize, end: usize) -> f64 {
    let v = curve.vertices();
    let n = v.len();
    (start + 1..end)
        .map(|i| {
            let (a, b, c) = (v[(i + n - 1) % n], v[i % n], v[(i + 1) % n]);
            turning_angle(&(b - a), &(c - b))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec3;
    use std::f64::consts::PI;

    #[test]
    fn convex_polygon_turns_once() {
        let hexagon: Vec<Vec3> = (0..6)
            .map(|k| {
                let t = PI / 3.0 * k as f64;
                Vec3::new(2.0 * t.cos(), t.sin(), 0.0)
            })
            .collect();
        let c = SampledCurve::new(hexagon, true).unwrap();
        assert!((total_curvature(&c) - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn straight_polyline_has_no_curvature() {
        let c = SampledCurve::from_points(&[[0., 0., 0.], [1., 1., 1.], [2., 2., 2.], [5., 5., 5.]], false)
            .unwrap();
        assert!(total_curvature(&c).abs() < 1e-12);
    }

    #[test]
    fn open_endpoints_do_not_turn() {
        let c = SampledCurve::from_points(&[[0., 0., 0.], [1., 0., 0.], [1., 1., 0.]], false)
            .unwrap();
        assert!((total_curvature(&c) - PI / 2.0).abs() < 1e-15);
        assert_eq!(turning_angles(&c).len(), 1);
    }
}
