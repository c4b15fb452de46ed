//! Illumination of a point by a curve: the line integral of `1/|y − x₀|²`.

use serde::Serialize;

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, Vec3};
use crate::invariants::quadrature::richardson;
use crate::reduce::tree_sum;

const MAX_SPLIT: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Illumination {
    pub value: f64,
    /// Sum of per-segment Richardson estimates.
    pub error: f64,
    /// Closest approach of the curve to the basepoint.
    pub min_distance: f64,
}

fn midpoint(a: &Vec3, b: &Vec3, x0: &Vec3, k: usize) -> f64 {
    let step = (b - a) / k as f64;
    let h = step.norm();
    (0..k)
        .map(|p| {
            let y = a + step * (p as f64 + 0.5);
            h / (y - x0).norm_squared()
        })
        .sum()
}

/// Midpoint-rule illumination with each segment subdivided finely relative
/// to its distance from the basepoint.
pub fn illumination(curve: &SampledCurve, basepoint: &Vec3) -> Result<Illumination> {
    let m = curve.segment_count();
    let mut values = Vec::with_capacity(m);
    let mut errors = Vec::with_capacity(m);
    let mut min_distance = f64::INFINITY;
    for i in 0..m {
        let (a, b) = curve.segment(i);
        let d = point_segment_distance(basepoint, a, b);
        if d < 1e-9 {
            return Err(Error::Precondition(format!(
                "basepoint lies on segment {i} (distance {d:e})"
            )));
        }
        min_distance = min_distance.min(d);
        let len = (b - a).norm();
        let k = ((32.0 * len / d).ceil() as usize).clamp(1, MAX_SPLIT);
        let coarse = midpoint(a, b, basepoint, k);
        let fine = midpoint(a, b, basepoint, 2 * k);
        values.push(fine);
        errors.push(richardson(coarse, fine));
    }
    Ok(Illumination {
        value: tree_sum(&values),
        error: tree_sum(&errors),
        min_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn line(a: [f64; 3], b: [f64; 3], n: usize) -> SampledCurve {
        let a = Vec3::from(a);
        let b = Vec3::from(b);
        let pts = (0..n).map(|k| a + (b - a) * (k as f64 / (n - 1) as f64)).collect();
        SampledCurve::new(pts, false).unwrap()
    }

    /// ∫ over a straight segment of 1/|y-x0|², in closed form.
    fn exact_segment(a: &Vec3, b: &Vec3, x0: &Vec3) -> f64 {
        let len = (b - a).norm();
        let u = (b - a) / len;
        let p = (a - x0).dot(&u);
        let h = ((a - x0).norm_squared() - p * p).max(0.0).sqrt();
        if h < 1e-12 {
            1.0 / p.abs().min((p + len).abs()) - 1.0 / p.abs().max((p + len).abs())
        } else {
            (((len + p) / h).atan() - (p / h).atan()) / h
        }
    }

    #[test]
    fn radial_ray() {
        let ray = line([2.0, 0.0, 0.0], [1e4, 0.0, 0.0], 200);
        let il = illumination(&ray, &Vec3::zeros()).unwrap();
        assert!((il.value - 0.5).abs() < 1e-3, "{il:?}");
        assert!(il.error < 1e-4);
    }

    #[test]
    fn tangent_line() {
        let l = line([-1e4, 2.0, 0.0], [1e4, 2.0, 0.0], 401);
        let il = illumination(&l, &Vec3::zeros()).unwrap();
        assert!((il.value - PI / 2.0).abs() < 1e-3, "{il:?}");
    }

    #[test]
    fn matches_closed_form_on_skew_polyline() {
        let pts = [[3.0, 1.0, -2.0], [0.5, 4.0, 1.0], [-3.0, 2.0, 2.5], [-2.0, -4.0, 0.0]];
        let c = SampledCurve::from_points(&pts, false).unwrap();
        let x0 = Vec3::new(0.2, -0.1, 0.3);
        let exact: f64 = (0..3)
            .map(|i| exact_segment(&Vec3::from(pts[i]), &Vec3::from(pts[i + 1]), &x0))
            .sum();
        let il = illumination(&c, &x0).unwrap();
        assert!((il.value - exact).abs() < 1e-4 * exact, "{} vs {exact}", il.value);
        assert!((il.value - exact).abs() <= 3.0 * il.error + 1e-12);
    }

    #[test]
    fn finite_segment_outside_radius_two_is_below_half_pi() {
        for offset in [2.0, 2.5, 7.0] {
            let l = line([-50.0, offset, 1.0], [80.0, offset, 1.0], 50);
            let il = illumination(&l, &Vec3::zeros()).unwrap();
            assert!(il.value < PI / 2.0);
        }
    }

    #[test]
    fn basepoint_on_curve_rejected() {
        let l = line([-1.0, 0.0, 0.0], [1.0, 0.0, 0.0], 3);
        assert!(matches!(
            illumination(&l, &Vec3::new(0.5, 0.0, 0.0)),
            Err(Error::Precondition(_))
        ));
    }
}
