//! Explicit curve families and the seeded random ensemble.
//!
//! Every generator is a pure function of its [`CurveSpec`]. Random curves use
//! ChaCha8 seeded from the spec's `seed` and only uniform draws, so output
//! is bit-identical across platforms.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ball::min_enclosing_ball_of_points;
use crate::curve::{Meta, SampledCurve};
use crate::error::{Error, Result};
use crate::geom::{vec3, Vec3};
use crate::invariants::curvature::partial_curvature;

/// Declarative description of one curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    #[serde(flatten)]
    pub family: Family,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    TorusKnot {
        p: u32,
        q: u32,
        major_radius: f64,
        minor_radius: f64,
    },
    HelixComposite {
        n: u32,
        #[serde(default = "default_exponent")]
        exponent: f64,
    },
    Spiral {
        theta_max: f64,
    },
    RoundedPolygon {
        vertices: Vec<[f64; 3]>,
        corner_radius: f64,
    },
    FourierRandom {
        modes: u32,
        seed: u64,
    },
    Circle {
        #[serde(default = "default_radius")]
        radius: f64,
    },
    LineSegment {
        start: [f64; 3],
        end: [f64; 3],
    },
}

fn default_exponent() -> f64 {
    2.0
}

fn default_radius() -> f64 {
    1.0
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::TorusKnot { .. } => "torus_knot",
            Family::HelixComposite { .. } => "helix_composite",
            Family::Spiral { .. } => "spiral",
            Family::RoundedPolygon { .. } => "rounded_polygon",
            Family::FourierRandom { .. } => "fourier_random",
            Family::Circle { .. } => "circle",
            Family::LineSegment { .. } => "line_segment",
        }
    }
}

pub fn generate(spec: &CurveSpec) -> Result<SampledCurve> {
    let samples = spec.samples;
    let mut curve = match &spec.family {
        Family::TorusKnot {
            p,
            q,
            major_radius,
            minor_radius,
        } => gen_torus_knot(*p, *q, *major_radius, *minor_radius, samples),
        Family::HelixComposite { n, exponent } => gen_helix_composite(*n, *exponent, samples),
        Family::Spiral { theta_max } => gen_spiral(*theta_max, samples),
        Family::RoundedPolygon {
            vertices,
            corner_radius,
        } => {
            let v: Vec<Vec3> = vertices.iter().map(|p| vec3(*p)).collect();
            gen_rounded_polygon(&v, *corner_radius, samples)
        }
        Family::FourierRandom { modes, seed } => gen_fourier_random(*modes, *seed, samples),
        Family::Circle { radius } => gen_circle(*radius, samples),
        Family::LineSegment { start, end } => {
            gen_line_segment(&vec3(*start), &vec3(*end), samples)
        }
    }?;
    if let Ok(serde_json::Value::Object(map)) = serde_json::to_value(spec) {
        curve
            .meta_mut()
            .insert("spec".into(), serde_json::Value::Object(map));
    }
    Ok(curve)
}

fn check_samples(samples: usize, min: usize) -> Result<()> {
    if samples < min {
        return Err(Error::InvalidParameter(format!(
            "samples must be at least {min}, got {samples}"
        )));
    }
    Ok(())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Torus knot winding `p` times around the tube (meridionally) and `q`
/// times around the symmetry axis (longitudinally).
pub fn gen_torus_knot(
    p: u32,
    q: u32,
    major_radius: f64,
    minor_radius: f64,
    samples: usize,
) -> Result<SampledCurve> {
    check_samples(samples, 3)?;
    if p < 1 || q < 1 || gcd(p, q) != 1 {
        return Err(Error::InvalidParameter(format!(
            "torus knot needs coprime p, q >= 1, got ({p}, {q})"
        )));
    }
    if !(minor_radius > 0.0 && minor_radius < major_radius) {
        return Err(Error::InvalidParameter(format!(
            "torus radii need 0 < minor < major, got ({major_radius}, {minor_radius})"
        )));
    }
    let (p, q) = (p as f64, q as f64);
    let pts = (0..samples)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / samples as f64;
            let rho = major_radius + minor_radius * (p * phi).cos();
            Vec3::new(
                rho * (q * phi).cos(),
                rho * (q * phi).sin(),
                minor_radius * (p * phi).sin(),
            )
        })
        .collect();
    SampledCurve::new(pts, true)
}

pub fn gen_circle(radius: f64, samples: usize) -> Result<SampledCurve> {
    check_samples(samples, 3)?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!("circle radius {radius}")));
    }
    let pts = (0..samples)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / samples as f64;
            Vec3::new(radius * t.cos(), radius * t.sin(), 0.0)
        })
        .collect();
    SampledCurve::new(pts, true)
}

pub fn gen_line_segment(start: &Vec3, end: &Vec3, samples: usize) -> Result<SampledCurve> {
    check_samples(samples, 3)?;
    let pts = (0..samples)
        .map(|k| start + (end - start) * (k as f64 / (samples - 1) as f64))
        .collect();
    SampledCurve::new(pts, false)
}

/// Planar polar spiral `r = 3 − 1/θ`, `θ ∈ [1, theta_max]`, sampled
/// uniformly in `θ`.
pub fn gen_spiral(theta_max: f64, samples: usize) -> Result<SampledCurve> {
    check_samples(samples, 3)?;
    if !(theta_max > 1.0 && theta_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "spiral needs theta_max > 1, got {theta_max}"
        )));
    }
    let pts = (0..samples)
        .map(|k| {
            let theta = 1.0 + (theta_max - 1.0) * k as f64 / (samples - 1) as f64;
            let r = 3.0 - 1.0 / theta;
            Vec3::new(r * theta.cos(), r * theta.sin(), 0.0)
        })
        .collect();
    SampledCurve::new(pts, false)
}

/// Right-angled polygonal path with every corner replaced by a circular
/// quarter arc of radius `corner_radius`.
pub fn gen_rounded_polygon(
    vertices: &[Vec3],
    corner_radius: f64,
    samples: usize,
) -> Result<SampledCurve> {
    if vertices.len() < 3 {
        return Err(Error::InvalidParameter(
            "rounded polygon needs at least 3 corner-polygon vertices".into(),
        ));
    }
    let edges: Vec<Vec3> = vertices.windows(2).map(|w| w[1] - w[0]).collect();
    let shortest = edges.iter().map(|e| e.norm()).fold(f64::INFINITY, f64::min);
    if !(corner_radius > 0.0 && corner_radius < 0.5 * shortest) {
        return Err(Error::InvalidParameter(format!(
            "corner radius {corner_radius} must be in (0, {})",
            0.5 * shortest
        )));
    }
    let dirs: Vec<Vec3> = edges.iter().map(|e| e.normalize()).collect();
    for (k, w) in dirs.windows(2).enumerate() {
        if w[0].dot(&w[1]).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "corner {} is not a right angle (cos = {:e})",
                k + 1,
                w[0].dot(&w[1])
            )));
        }
    }
    let corners = vertices.len() - 2;
    check_samples(samples, 2 + 3 * corners)?;
    let arc_points = (samples / (4 * corners)).clamp(3, 256);
    let arc_budget = corners * (arc_points - 1);
    let straight_budget = samples.saturating_sub(arc_budget + 1);

    // straight parts: start → first arc, between arcs, last arc → end
    let mut straights = Vec::with_capacity(corners + 1);
    let mut cursor = vertices[0];
    for k in 0..corners {
        let corner = vertices[k + 1];
        straights.push((cursor, corner - dirs[k] * corner_radius));
        cursor = corner + dirs[k + 1] * corner_radius;
    }
    straights.push((cursor, vertices[vertices.len() - 1]));
    let straight_total: f64 = straights.iter().map(|(a, b)| (b - a).norm()).sum();

    let mut pts = vec![vertices[0]];
    for (k, (a, b)) in straights.iter().enumerate() {
        let share = ((b - a).norm() / straight_total * straight_budget as f64).floor() as usize;
        let segments = share.max(1);
        for s in 1..=segments {
            pts.push(a + (b - a) * (s as f64 / segments as f64));
        }
        if k < corners {
            let center = b + dirs[k + 1] * corner_radius;
            for s in 1..arc_points {
                let alpha = 0.5 * PI * s as f64 / (arc_points - 1) as f64;
                pts.push(
                    center
                        + (-dirs[k + 1] * alpha.cos() + dirs[k] * alpha.sin()) * corner_radius,
                );
            }
        }
    }
    let mut curve = SampledCurve::new(pts, false)?;
    curve
        .meta_mut()
        .insert("corners".into(), serde_json::json!(corners));
    Ok(curve)
}

/// Smooth random closed curve `Σ_k a_k cos(kt) + b_k sin(kt)` with
/// coefficients uniform in `[-1/k, 1/k]`, centered and scaled to unit
/// enclosing-ball radius.
pub fn gen_fourier_random(modes: u32, seed: u64, samples: usize) -> Result<SampledCurve> {
    check_samples(samples, 3)?;
    if modes < 1 {
        return Err(Error::InvalidParameter("modes must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<(Vec3, Vec3)> = (1..=modes)
        .map(|k| {
            let mut draw = || {
                Vec3::new(
                    2.0 * rng.random::<f64>() - 1.0,
                    2.0 * rng.random::<f64>() - 1.0,
                    2.0 * rng.random::<f64>() - 1.0,
                ) / k as f64
            };
            (draw(), draw())
        })
        .collect();
    let raw: Vec<Vec3> = (0..samples)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / samples as f64;
            coeffs
                .iter()
                .enumerate()
                .fold(Vec3::zeros(), |acc, (k, (a, b))| {
                    let kt = (k + 1) as f64 * t;
                    acc + a * kt.cos() + b * kt.sin()
                })
        })
        .collect();
    let ball = min_enclosing_ball_of_points(&raw);
    let pts = raw
        .iter()
        .map(|p| (p - ball.center) / ball.radius)
        .collect();
    SampledCurve::new(pts, true)
}

/// Quintic Hermite blend from `(p0, t0)` to `(p1, t1)` with zero second
/// derivatives at both ends; tangents are scaled by `scale`.
fn hermite5(p0: &Vec3, t0: &Vec3, p1: &Vec3, t1: &Vec3, scale: f64, u: f64) -> Vec3 {
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u3 * u;
    let u5 = u4 * u;
    let h0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
    let h1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
    let h4 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
    let h5 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
    p0 * h0 + t0 * (h1 * scale) + t1 * (h4 * scale) + p1 * h5
}

/// Points along a piece, endpoints included.
fn piece(count: usize, f: impl Fn(f64) -> Vec3) -> Vec<Vec3> {
    (0..=count).map(|k| f(k as f64 / count as f64)).collect()
}

/// The composite knot built from a circular helix `[cos t, sin t, n^e t]`,
/// `t ∈ [0, nπ]`, its axis, and two planar connectors made of half circles,
/// straight runs and Hermite blends.
///
/// Per-portion total curvatures and vertex ranges are recorded in the meta
/// map (`kappa_helix`, `kappa_axis`, `kappa_c1`, `kappa_c2`, `*_range`).
pub fn gen_helix_composite(n: u32, exponent: f64, samples: usize) -> Result<SampledCurve> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "helix composite needs odd n >= 3, got {n}"
        )));
    }
    if !(exponent > 1.0 && exponent.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "helix exponent must exceed 1, got {exponent}"
        )));
    }
    check_samples(samples, 128)?;
    let nf = n as f64;
    let rise = nf.powf(exponent);
    let t_end = nf * PI;
    let top = rise * t_end;
    let blend = 1.0;

    let arc_pts = (samples / 32).clamp(16, 128);
    let blend_pts = (samples / 128).clamp(4, 32);
    let helix_len = t_end * (1.0 + rise * rise).sqrt();
    let vertical_len = top + 2.0 * blend;
    let remaining = samples.saturating_sub(4 * arc_pts + 2 * blend_pts);
    let long_total = helix_len + 3.0 * vertical_len;
    let share = |len: f64| ((len / long_total) * remaining as f64).floor().max(2.0) as usize;
    let helix_pts = share(helix_len).max(8 * n as usize);
    let vert_pts = share(vertical_len);
    let axis_split = |k: usize| {
        // keep exact vertices at z = 0 and z = top on the axis
        let inner = (vert_pts - 2).max(1);
        (k, inner)
    };

    let helix_end = Vec3::new(t_end.cos(), t_end.sin(), top);
    let helix_start = Vec3::new(1.0, 0.0, 0.0);
    let helix_tangent =
        |t: f64| Vec3::new(-t.sin(), t.cos(), rise).normalize();
    let up = Vec3::z();
    let down = -Vec3::z();

    let mut pieces: Vec<(&str, Vec<Vec3>)> = Vec::new();
    pieces.push((
        "helix",
        piece(helix_pts, |u| {
            let t = u * t_end;
            Vec3::new(t.cos(), t.sin(), rise * t)
        }),
    ));
    let c1_top_start = Vec3::new(-1.0, 0.0, top + blend);
    pieces.push((
        "c1",
        piece(blend_pts, |u| {
            hermite5(&helix_end, &helix_tangent(t_end), &c1_top_start, &up, blend, u)
        }),
    ));
    let c1_top_center = Vec3::new(-2.0, 0.0, top + blend);
    pieces.push((
        "c1",
        piece(arc_pts, |u| {
            let a = PI * u;
            c1_top_center + Vec3::new(a.cos(), 0.0, a.sin())
        }),
    ));
    pieces.push((
        "c1",
        piece(vert_pts, |u| Vec3::new(-3.0, 0.0, top + blend) + down * (u * vertical_len)),
    ));
    let c1_bottom_center = Vec3::new(-1.5, 0.0, -blend);
    pieces.push((
        "c1",
        piece(arc_pts, |u| {
            let a = PI + PI * u;
            c1_bottom_center + Vec3::new(a.cos(), 0.0, a.sin()) * 1.5
        }),
    ));
    pieces.push((
        "c1",
        piece(blend_pts, |u| Vec3::new(0.0, 0.0, -blend * (1.0 - u))),
    ));
    let (_, axis_inner) = axis_split(0);
    pieces.push((
        "axis",
        piece(axis_inner, |u| Vec3::new(0.0, 0.0, top * u)),
    ));
    pieces.push((
        "c2",
        piece(blend_pts, |u| Vec3::new(0.0, 0.0, top + blend * u)),
    ));
    let c2_top_center = Vec3::new(1.5, 0.0, top + blend);
    pieces.push((
        "c2",
        piece(arc_pts, |u| {
            let a = PI * (1.0 - u);
            c2_top_center + Vec3::new(a.cos(), 0.0, a.sin()) * 1.5
        }),
    ));
    pieces.push((
        "c2",
        piece(vert_pts, |u| Vec3::new(3.0, 0.0, top + blend) + down * (u * vertical_len)),
    ));
    let c2_bottom_center = Vec3::new(2.0, 0.0, -blend);
    pieces.push((
        "c2",
        piece(arc_pts, |u| {
            let a = -PI * u;
            c2_bottom_center + Vec3::new(a.cos(), 0.0, a.sin())
        }),
    ));
    let c2_bottom_end = Vec3::new(1.0, 0.0, -blend);
    pieces.push((
        "c2",
        piece(blend_pts, |u| {
            hermite5(&c2_bottom_end, &up, &helix_start, &helix_tangent(0.0), blend, u)
        }),
    ));

    let mut pts: Vec<Vec3> = Vec::with_capacity(samples + 16);
    let mut ranges: Vec<(&str, usize, usize)> = Vec::new();
    for (idx, (name, p)) in pieces.iter().enumerate() {
        let skip = usize::from(idx > 0);
        let start = pts.len().saturating_sub(skip);
        pts.extend_from_slice(&p[skip..]);
        let end = pts.len() - 1;
        match ranges.last_mut() {
            Some(last) if last.0 == *name => last.2 = end,
            _ => ranges.push((name, start, end)),
        }
    }
    // the final blend ends back at the helix start
    pts.pop();
    let total = pts.len();

    let curve = SampledCurve::new(pts, true)?;
    let mut meta = Meta::new();
    for (name, start, end) in &ranges {
        let end = (*end).min(total);
        // portions own their interior vertices; connectors also own the
        // junction vertices where they meet helix and axis
        let kappa = match *name {
            "helix" | "axis" => partial_curvature(&curve, *start, end),
            _ => partial_curvature(&curve, start - 1, end + 1),
        };
        meta.insert(format!("kappa_{name}"), serde_json::json!(kappa));
        meta.insert(format!("{name}_range"), serde_json::json!([start, end % total]));
    }
    meta.insert("height".into(), serde_json::json!(top));
    let mut curve = curve;
    curve.meta_mut().extend(meta);
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::total_curvature;

    #[test]
    fn spec_json_shape() {
        let spec: CurveSpec = serde_json::from_str(
            r#"{"family":"torus_knot","p":2,"q":3,"major_radius":3,"minor_radius":1,"samples":64}"#,
        )
        .unwrap();
        assert_eq!(
            spec.family,
            Family::TorusKnot {
                p: 2,
                q: 3,
                major_radius: 3.0,
                minor_radius: 1.0
            }
        );
        let helix: CurveSpec =
            serde_json::from_str(r#"{"family":"helix_composite","n":5,"samples":512}"#).unwrap();
        assert_eq!(
            helix.family,
            Family::HelixComposite {
                n: 5,
                exponent: 2.0
            }
        );
    }

    #[test]
    fn parameter_violations() {
        assert!(gen_torus_knot(2, 4, 3.0, 1.0, 64).is_err());
        assert!(gen_torus_knot(2, 3, 1.0, 1.0, 64).is_err());
        assert!(gen_helix_composite(4, 2.0, 512).is_err());
        assert!(gen_helix_composite(1, 2.0, 512).is_err());
        assert!(gen_spiral(1.0, 100).is_err());
        assert!(gen_fourier_random(0, 1, 100).is_err());
    }

    #[test]
    fn rounded_l_shape_turns_a_quarter() {
        let v = [
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(4.0, 0.0, 0.0),
            Vec3::new(4.0, 3.0, 0.0),
        ];
        let c = gen_rounded_polygon(&v, 0.5, 200).unwrap();
        assert!((total_curvature(&c) - PI / 2.0).abs() < 1e-6);
        assert!(c.vertices().iter().all(|p| p.z == 0.0));
    }

    #[test]
    fn staircase_turns_quarter_per_corner() {
        let v = [
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(3.0, 0.0, 0.0),
            Vec3::new(3.0, 3.0, 0.0),
            Vec3::new(3.0, 3.0, 3.0),
            Vec3::new(6.0, 3.0, 3.0),
            Vec3::new(6.0, 6.0, 3.0),
        ];
        let c = gen_rounded_polygon(&v, 0.4, 400).unwrap();
        assert!((total_curvature(&c) - 4.0 * PI / 2.0).abs() < 1e-6);
    }

    #[test]
    fn rounded_polygon_rejects_bad_input() {
        let skew = [
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(2.0, 1.0, 0.0),
        ];
        assert!(gen_rounded_polygon(&skew, 0.1, 50).is_err());
        let ok = [
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
        ];
        assert!(gen_rounded_polygon(&ok, 0.6, 50).is_err());
    }

    #[test]
    fn fourier_is_deterministic_and_normalized() {
        let a = gen_fourier_random(5, 42, 500).unwrap();
        let b = gen_fourier_random(5, 42, 500).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
        let ball = min_enclosing_ball_of_points(a.vertices());
        assert!((ball.radius - 1.0).abs() < 1e-9);
        assert!(ball.center.norm() < 1e-9);
        assert_ne!(a, gen_fourier_random(5, 43, 500).unwrap());
    }

    #[test]
    fn spiral_radius_range_and_planarity() {
        let s = gen_spiral(50.0, 2000).unwrap();
        for v in s.vertices() {
            let r = v.norm();
            assert!((2.0..3.0).contains(&r), "r = {r}");
            assert_eq!(v.z, 0.0);
        }
    }

    #[test]
    fn helix_composite_axis_is_straight() {
        let c = gen_helix_composite(5, 2.0, 1024).unwrap();
        let kappa_axis = c.meta()["kappa_axis"].as_f64().unwrap();
        assert!(kappa_axis.abs() < 1e-12);
        let c1 = c.meta()["kappa_c1"].as_f64().unwrap();
        let c2 = c.meta()["kappa_c2"].as_f64().unwrap();
        // each connector turns 2π plus the small helix-tangent tilt at its end
        let tilt = (1.0f64 / 25.0).atan();
        assert!((c1 - 2.0 * PI - tilt).abs() < 0.06, "{c1}");
        assert!((c2 - 2.0 * PI - tilt).abs() < 0.06, "{c2}");
    }
}
