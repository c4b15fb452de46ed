//! Small geometric primitives shared by every module.

use nalgebra::Vector3;

pub type Vec3 = Vector3<f64>;

#[inline]
pub fn vec3(p: [f64; 3]) -> Vec3 {
    Vec3::new(p[0], p[1], p[2])
}

#[inline]
pub fn to_array(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

/// Exterior (turning) angle between two direction vectors, in `[0, π]`.
///
/// Uses `atan2(|a×b|, a·b)`, which stays accurate for nearly parallel and
/// nearly antiparallel inputs where `acos` loses precision.
#[inline]
pub fn turning_angle(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Radius of the circle through three points; infinite for collinear input.
pub fn circumradius(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let ab = b - a;
    let bc = c - b;
    let ca = a - c;
    let twice_area = ab.cross(&(c - a)).norm();
    if twice_area == 0.0 {
        return f64::INFINITY;
    }
    ab.norm() * bc.norm() * ca.norm() / (2.0 * twice_area)
}

/// Closest points between segments `p0→p1` and `q0→q1`.
///
/// Returns `(distance, s, t)` with the closest points at `p0 + s(p1-p0)` and
/// `q0 + t(q1-q0)`, `s, t ∈ [0, 1]`.
pub fn segment_segment(p0: &Vec3, p1: &Vec3, q0: &Vec3, q1: &Vec3) -> (f64, f64, f64) {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let r = p0 - q0;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let f = d2.dot(&r);

    let (s, t) = if a <= f64::MIN_POSITIVE && e <= f64::MIN_POSITIVE {
        (0.0, 0.0)
    } else if a <= f64::MIN_POSITIVE {
        (0.0, (f / e).clamp(0.0, 1.0))
    } else {
        let c = d1.dot(&r);
        if e <= f64::MIN_POSITIVE {
            ((-c / a).clamp(0.0, 1.0), 0.0)
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let mut s = if denom > 1e-14 * a * e {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            }
            (s, t)
        }
    };
    let cp = p0 + d1 * s;
    let cq = q0 + d2 * t;
    ((cp - cq).norm(), s, t)
}

/// Distance from a point to a segment.
pub fn point_segment_distance(x: &Vec3, a: &Vec3, b: &Vec3) -> f64 {
    let d = b - a;
    let len2 = d.dot(&d);
    if len2 == 0.0 {
        return (x - a).norm();
    }
    let s = ((x - a).dot(&d) / len2).clamp(0.0, 1.0);
    (a + d * s - x).norm()
}

/// Length of the part of segment `a→b` lying in the closed shell
/// `inner ≤ |y − center| ≤ outer`.
pub fn segment_length_in_shell(a: &Vec3, b: &Vec3, center: &Vec3, inner: f64, outer: f64) -> f64 {
    let d = b - a;
    let len = d.norm();
    if len == 0.0 || outer < inner {
        return 0.0;
    }
    let u = d / len;
    let w = a - center;
    let p = w.dot(&u);
    let q = w.dot(&w);
    // |w + s u|² = s² + 2ps + q ≤ r²  ⇔  s ∈ [-p - h, -p + h], h = √(p² - q + r²)
    let inside = |r: f64| -> Option<(f64, f64)> {
        let disc = p * p - q + r * r;
        if disc < 0.0 {
            return None;
        }
        let h = disc.sqrt();
        let lo = (-p - h).max(0.0);
        let hi = (-p + h).min(len);
        (hi > lo).then_some((lo, hi))
    };
    let outer_len = inside(outer).map_or(0.0, |(lo, hi)| hi - lo);
    let inner_len = if inner > 0.0 {
        inside(inner).map_or(0.0, |(lo, hi)| hi - lo)
    } else {
        0.0
    };
    (outer_len - inner_len).max(0.0)
}

/// Any unit vector perpendicular to `d` (which must be nonzero).
pub fn perpendicular(d: &Vec3) -> Vec3 {
    let axis = if d.x.abs() <= d.y.abs() && d.x.abs() <= d.z.abs() {
        Vec3::x()
    } else if d.y.abs() <= d.z.abs() {
        Vec3::y()
    } else {
        Vec3::z()
    };
    d.cross(&axis).normalize()
}

/// Pairwise (tree) summation in a fixed order: the result depends only on the
/// slice contents, never on how the slice was produced.
pub fn tree_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let (lo, hi) = values.split_at(n / 2);
            tree_sum(lo) + tree_sum(hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn circumradius_of_right_triangle_is_half_hypotenuse() {
        let r = circumradius(
            &Vec3::new(0.0, 0.0, 0.0),
            &Vec3::new(3.0, 0.0, 0.0),
            &Vec3::new(0.0, 4.0, 0.0),
        );
        assert_relative_eq!(r, 2.5, epsilon = 1e-12);
        let collinear = circumradius(&Vec3::zeros(), &Vec3::x(), &(Vec3::x() * 2.0));
        assert!(collinear.is_infinite());
    }

    #[test]
    fn skew_segments_closest_points() {
        let (d, s, t) = segment_segment(
            &Vec3::new(-1.0, 0.0, 0.0),
            &Vec3::new(1.0, 0.0, 0.0),
            &Vec3::new(0.0, -1.0, 2.0),
            &Vec3::new(0.0, 1.0, 2.0),
        );
        assert_relative_eq!(d, 2.0, epsilon = 1e-12);
        assert_relative_eq!(s, 0.5, epsilon = 1e-12);
        assert_relative_eq!(t, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn parallel_segments_distance() {
        let (d, _, _) = segment_segment(
            &Vec3::new(0.0, 0.0, 0.0),
            &Vec3::new(1.0, 0.0, 0.0),
            &Vec3::new(0.5, 1.0, 0.0),
            &Vec3::new(3.0, 1.0, 0.0),
        );
        assert_relative_eq!(d, 1.0, epsilon = 1e-12);
        let (d, s, t) = segment_segment(
            &Vec3::new(0.0, 0.0, 0.0),
            &Vec3::new(1.0, 0.0, 0.0),
            &Vec3::new(2.0, 0.0, 0.0),
            &Vec3::new(3.0, 0.0, 0.0),
        );
        assert_relative_eq!(d, 1.0, epsilon = 1e-12);
        assert_eq!((s, t), (1.0, 0.0));
    }

    #[test]
    fn shell_clipping_on_radial_segment() {
        let a = Vec3::new(0.0, 0.0, 0.0);
        let b = Vec3::new(10.0, 0.0, 0.0);
        let len = segment_length_in_shell(&a, &b, &Vec3::zeros(), 2.0, 3.0);
        assert_relative_eq!(len, 1.0, epsilon = 1e-12);
        // chord of the sphere of radius 5 at offset 3: half-length 4
        let a = Vec3::new(-10.0, 3.0, 0.0);
        let b = Vec3::new(10.0, 3.0, 0.0);
        assert_relative_eq!(
            segment_length_in_shell(&a, &b, &Vec3::zeros(), 0.0, 5.0),
            8.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn tree_sum_is_order_fixed() {
        let v: Vec<f64> = (0..1000).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        assert_eq!(tree_sum(&v).to_bits(), tree_sum(&v.clone()).to_bits());
        assert_relative_eq!(tree_sum(&v), v.iter().sum::<f64>(), epsilon = 1e-12);
    }
}
