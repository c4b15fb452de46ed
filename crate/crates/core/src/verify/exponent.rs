//! Empirical shell-growth exponent: how arclength within distance shells
//! `S[n, n+1]` about points of the curve scales with `n`.
//!
//! Purely diagnostic; nothing is asserted about the exponent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::geom::segment_length_in_shell;
use crate::invariants::thickness::thickness_radius;
use crate::reduce::par_rows;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointFit {
    pub vertex: usize,
    pub slope: f64,
    pub intercept: f64,
    /// RMS residual of the log-log fit.
    pub residual: f64,
    pub shells: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShellExponent {
    pub beta_hat: f64,
    pub residual: f64,
    /// Whether `β̂ ∈ [0, 2]`.
    pub in_range: bool,
    /// `linear` (β < 1), `logarithmic` (β ≈ 1) or `power` (β > 1).
    pub regime: String,
    pub per_point: Vec<PointFit>,
}

/// Rescale so the thickness radius is 1.
pub fn normalize_thickness(curve: &SampledCurve) -> Result<SampledCurve> {
    let r = thickness_radius(curve)?;
    curve.scaled(1.0 / r)
}

/// Arclength in each shell `S[n, n+1]`, `n = 0, 1, …`, about vertex `i`.
pub fn shell_lengths(curve: &SampledCurve, i: usize) -> Vec<f64> {
    let x0 = curve.vertex(i);
    let reach = curve
        .vertices()
        .iter()
        .map(|v| (v - x0).norm())
        .fold(0.0, f64::max);
    let shells = reach.floor() as usize + 1;
    let mut lengths = vec![0.0; shells];
    for s in 0..curve.segment_count() {
        let (a, b) = curve.segment(s);
        let hi = (a - x0).norm().max((b - x0).norm());
        // the segment can dip below both endpoint distances
        let start = crate::geom::point_segment_distance(x0, a, b).floor() as usize;
        let end = (hi.floor() as usize).min(shells - 1);
        for (n, len) in lengths.iter_mut().enumerate().take(end + 1).skip(start) {
            *len += segment_length_in_shell(a, b, x0, n as f64, n as f64 + 1.0);
        }
    }
    lengths
}

fn fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    (slope, intercept, (rss / n).sqrt())
}

/// Least-squares slope of `log(shell length)` against `log n` over shells
/// `n ≥ 1`, averaged over `basepoints` vertices drawn with `seed`. The curve
/// must already be scaled to unit thickness.
pub fn estimate_shell_exponent(
    curve: &SampledCurve,
    basepoints: usize,
    seed: u64,
) -> Result<ShellExponent> {
    if basepoints == 0 {
        return Err(Error::InvalidParameter("basepoints must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices: Vec<usize> = (0..basepoints)
        .map(|_| rng.random_range(0..curve.len()))
        .collect();
    let fits = par_rows(vertices.len(), |k| {
        let lengths = shell_lengths(curve, vertices[k]);
        let pts: Vec<(f64, f64)> = lengths
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &l)| l > 1e-12)
            .map(|(n, &l)| ((n as f64).ln(), l.ln()))
            .collect();
        (pts.len() >= 3).then(|| {
            let (slope, intercept, residual) = fit(&pts);
            PointFit {
                vertex: vertices[k],
                slope,
                intercept,
                residual,
                shells: pts.len(),
            }
        })
    });
    let per_point: Vec<PointFit> = fits.into_iter().flatten().collect();
    if per_point.is_empty() {
        return Err(Error::Precondition(
            "fewer than 3 populated shells about every basepoint; nothing to fit".into(),
        ));
    }
    let k = per_point.len() as f64;
    let beta_hat = per_point.iter().map(|f| f.slope).sum::<f64>() / k;
    let residual = per_point.iter().map(|f| f.residual).sum::<f64>() / k;
    let regime = if (beta_hat - 1.0).abs() <= 0.15 {
        "logarithmic"
    } else if beta_hat < 1.0 {
        "linear"
    } else {
        "power"
    };
    Ok(ShellExponent {
        beta_hat,
        residual,
        in_range: (0.0..=2.0).contains(&beta_hat),
        regime: regime.into(),
        per_point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec3;
    use std::f64::consts::PI;

    #[test]
    fn shell_lengths_sum_to_total() {
        let pts: Vec<Vec3> = (0..300)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 300.0;
                Vec3::new(10.0 * t.cos(), 3.0 * t.sin(), 0.5 * (3.0 * t).sin())
            })
            .collect();
        let c = SampledCurve::new(pts, true).unwrap();
        let total = crate::curve::build_arc_table(&c).total_length;
        let sum: f64 = shell_lengths(&c, 17).iter().sum();
        assert!((sum - total).abs() < 1e-9 * total);
    }

    #[test]
    fn flat_loop_is_near_zero() {
        // long thin stadium: two strands per shell
        let mut pts = Vec::new();
        for k in 0..400 {
            pts.push(Vec3::new(k as f64 * 0.5, 0.0, 0.0));
        }
        for k in 0..20 {
            let t = PI * k as f64 / 20.0;
            pts.push(Vec3::new(200.0 + t.sin(), 1.0 - t.cos(), 0.0));
        }
        for k in 0..400 {
            pts.push(Vec3::new(200.0 - k as f64 * 0.5, 2.0, 0.0));
        }
        for k in 0..20 {
            let t = PI * k as f64 / 20.0;
            pts.push(Vec3::new(-t.sin(), 1.0 + t.cos(), 0.0));
        }
        let c = SampledCurve::new(pts, true).unwrap();
        let e = estimate_shell_exponent(&c, 16, 3).unwrap();
        assert!(e.beta_hat.abs() < 0.25, "{}", e.beta_hat);
        assert_eq!(e.regime, "linear");
    }

    #[test]
    fn annulus_spiral_is_near_one() {
        // Archimedean spiral, turns 3 apart, filling a disk of radius ~150
        let pts: Vec<Vec3> = (0..20000)
            .map(|k| {
                let t = 2.0 * PI * 50.0 * k as f64 / 20000.0;
                let r = 3.0 * t / (2.0 * PI);
                Vec3::new(r * t.cos(), r * t.sin(), 0.0)
            })
            .skip(200)
            .collect();
        let c = SampledCurve::new(pts, false).unwrap();
        // basepoints near the centre see full annuli
        let lengths = shell_lengths(&c, 0);
        let fitted: Vec<(f64, f64)> = lengths
            .iter()
            .enumerate()
            .skip(10)
            .take(100)
            .map(|(n, &l)| ((n as f64).ln(), l.ln()))
            .collect();
        let (slope, _, _) = fit(&fitted);
        assert!((slope - 1.0).abs() < 0.15, "{slope}");
        let e = estimate_shell_exponent(&c, 8, 1).unwrap();
        assert!(e.beta_hat > 0.5 && e.beta_hat < 1.3, "{}", e.beta_hat);
    }
}
