//! Smallest enclosing ball of a point set (Welzl's algorithm with the
//! move-to-front heuristic).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve::SampledCurve;
use crate::geom::Vec3;

const CONTAIN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    pub center: Vec3,
    pub radius: f64,
}

impl Ball {
    fn empty() -> Self {
        Ball {
            center: Vec3::zeros(),
            radius: -1.0,
        }
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        self.radius >= 0.0 && (p - self.center).norm() <= self.radius * (1.0 + CONTAIN_EPS) + 1e-300
    }
}

pub fn min_enclosing_ball(curve: &SampledCurve) -> Ball {
    min_enclosing_ball_of_points(curve.vertices())
}

pub fn min_enclosing_ball_of_points(points: &[Vec3]) -> Ball {
    let mut pts = points.to_vec();
    // fixed shuffle: expected linear time without giving up determinism
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed_ba11));
    let mut support = Vec::with_capacity(4);
    let end = pts.len();
    let ball = mtf(&mut pts, end, &mut support);
    polish(ball, points)
}

fn mtf(pts: &mut [Vec3], end: usize, support: &mut Vec<Vec3>) -> Ball {
    let mut ball = ball_from_support(support);
    if support.len() == 4 {
        return ball;
    }
    for i in 0..end {
        if !ball.contains(&pts[i]) {
            support.push(pts[i]);
            ball = mtf(pts, i, support);
            support.pop();
            pts[..=i].rotate_right(1);
        }
    }
    ball
}

/// Re-derive the radius from the final center so every point is enclosed
/// without relying on the containment slack.
fn polish(ball: Ball, points: &[Vec3]) -> Ball {
    let radius = points
        .iter()
        .map(|p| (p - ball.center).norm())
        .fold(0.0, f64::max);
    Ball {
        center: ball.center,
        radius,
    }
}

fn ball_from_support(s: &[Vec3]) -> Ball {
    match s.len() {
        0 => Ball::empty(),
        1 => Ball {
            center: s[0],
            radius: 0.0,
        },
        2 => diametral(&s[0], &s[1]),
        3 => circumball3(&s[0], &s[1], &s[2]).unwrap_or_else(|| smallest_covering(s)),
        _ => circumball4(s).unwrap_or_else(|| smallest_covering(s)),
    }
}

fn diametral(a: &Vec3, b: &Vec3) -> Ball {
    Ball {
        center: (a + b) * 0.5,
        radius: (a - b).norm() * 0.5,
    }
}

fn circumball3(a: &Vec3, b: &Vec3, c: &Vec3) -> Option<Ball> {
    let u = b - a;
    let v = c - a;
    let w = u.cross(&v);
    let w2 = w.norm_squared();
    if w2 <= 1e-24 * u.norm_squared() * v.norm_squared() {
        return None;
    }
    let offset = (v.cross(&w) * u.norm_squared() + w.cross(&u) * v.norm_squared()) / (2.0 * w2);
    Some(Ball {
        center: a + offset,
        radius: offset.norm(),
    })
}

fn circumball4(s: &[Vec3]) -> Option<Ball> {
    let a = s[0];
    let rows: Vec<Vec3> = s[1..4].iter().map(|p| p - a).collect();
    let m = nalgebra::Matrix3::from_rows(&[
        rows[0].transpose(),
        rows[1].transpose(),
        rows[2].transpose(),
    ]);
    let scale = rows.iter().map(|r| r.norm()).product::<f64>();
    if m.determinant().abs() <= 1e-12 * scale {
        return None;
    }
    let rhs = Vec3::new(
        rows[0].norm_squared() * 0.5,
        rows[1].norm_squared() * 0.5,
        rows[2].norm_squared() * 0.5,
    );
    let x = m.lu().solve(&rhs)?;
    Some(Ball {
        center: a + x,
        radius: x.norm(),
    })
}

/// Degenerate support sets: the smallest ball spanned by a subset that
/// still covers all of them.
fn smallest_covering(s: &[Vec3]) -> Ball {
    let mut best: Option<Ball> = None;
    let mut consider = |b: Ball| {
        if s.iter().all(|p| b.contains(p)) && best.is_none_or(|cur| b.radius < cur.radius) {
            best = Some(b);
        }
    };
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            consider(diametral(&s[i], &s[j]));
            for k in j + 1..s.len() {
                if let Some(b) = circumball3(&s[i], &s[j], &s[k]) {
                    consider(b);
                }
            }
        }
    }
    best.unwrap_or_else(|| {
        // all points coincide or numerical trouble: fall back to centroid
        let c = s.iter().fold(Vec3::zeros(), |acc, p| acc + p) / s.len() as f64;
        Ball {
            center: c,
            radius: s.iter().map(|p| (p - c).norm()).fold(0.0, f64::max),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use std::f64::consts::PI;

    #[test]
    fn unit_circle_samples() {
        let pts: Vec<Vec3> = (0..360)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 360.0;
                Vec3::new(t.cos(), t.sin(), 0.0)
            })
            .collect();
        let b = min_enclosing_ball_of_points(&pts);
        assert!(b.center.norm() < 1e-6);
        assert!((b.radius - 1.0).abs() < 1e-6);
    }

    #[test]
    fn antipodal_clusters() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut pts = vec![Vec3::new(5.0, 0.0, 0.0), Vec3::new(-5.0, 0.0, 0.0)];
        for _ in 0..50 {
            let jitter = Vec3::new(rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()) * 1e-3;
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            let p = Vec3::new(5.0 * sign, 0.0, 0.0) - jitter * sign;
            if (p - Vec3::zeros()).norm() <= 5.0 {
                pts.push(p);
            }
        }
        let b = min_enclosing_ball_of_points(&pts);
        assert!((b.radius - 5.0).abs() < 1e-9);
        assert!(b.center.norm() < 1e-9);
    }

    /// Independent optimality check: every point inside, and no small move
    /// of the center shrinks the farthest distance.
    fn assert_optimal(points: &[Vec3], ball: &Ball) {
        let far = |c: &Vec3| points.iter().map(|p| (p - c).norm()).fold(0.0, f64::max);
        assert!(points.iter().all(|p| (p - ball.center).norm() <= ball.radius * (1.0 + 1e-9)));
        let on_boundary = points
            .iter()
            .filter(|p| ((*p - ball.center).norm() - ball.radius).abs() <= 1e-9 * ball.radius)
            .count();
        assert!(on_boundary >= 2, "only {on_boundary} support points");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let v = Vec3::new(
                rng.random::<f64>() - 0.5,
                rng.random::<f64>() - 0.5,
                rng.random::<f64>() - 0.5,
            )
            .normalize();
            for step in [1e-3, 1e-5] {
                let moved = ball.center + v * step * ball.radius;
                assert!(far(&moved) >= ball.radius * (1.0 - 1e-9));
            }
        }
    }

    #[test]
    fn random_clouds_are_optimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..20 {
            let n = 4 + trial * 5;
            let pts: Vec<Vec3> = (0..n)
                .map(|_| {
                    Vec3::new(
                        rng.random::<f64>() * 4.0 - 2.0,
                        rng.random::<f64>() * 2.0 - 1.0,
                        rng.random::<f64>() * 6.0 - 3.0,
                    )
                })
                .collect();
            let b = min_enclosing_ball_of_points(&pts);
            assert_optimal(&pts, &b);
        }
    }

    #[test]
    fn hundred_point_cloud() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let pts: Vec<Vec3> = (0..100)
            .map(|_| Vec3::new(rng.random(), rng.random(), rng.random()))
            .collect();
        let b = min_enclosing_ball_of_points(&pts);
        assert_optimal(&pts, &b);
    }
}
