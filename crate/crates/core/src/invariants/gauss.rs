//! Gauss-type double integrals: average crossing number, writhe, and the
//! Near/Far split of the crossing integral at intrinsic distance `πR`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::curve::{build_arc_table, ArcTable, SampledCurve};
use crate::error::{Error, Result};
use crate::invariants::quadrature::{band_area, for_each_subpair, richardson, split_count};
use crate::invariants::thickness::{check_embedded, thickness_radius};
use crate::reduce::{par_rows, tree_sum};

/// Pointwise bound on the crossing integrand near the diagonal of a curve
/// with unit thickness: `(π/4)(π/2)²`.
pub const NEAR_INTEGRAND_BOUND: f64 = PI / 4.0 * (PI / 2.0) * (PI / 2.0);

/// Bound on the inner Near integral for unit thickness: `2π · (π/4)(π/2)²`.
pub const NEAR_INNER_BOUND: f64 = 2.0 * PI * NEAR_INTEGRAND_BOUND;

/// Raw double sums (before the `1/4π` normalization).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct GaussSums {
    pub abs_total: f64,
    pub signed_total: f64,
    pub near: f64,
    pub far: f64,
    /// Largest `|integrand| · R²` seen on the Near band.
    pub max_near_integrand: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussIntegrals {
    pub acn: f64,
    pub writhe: f64,
    pub near: f64,
    pub far: f64,
    pub thickness: f64,
    pub max_near_integrand: f64,
    /// Bound on what the excluded shared-vertex band would contribute for a
    /// smooth curve of the same thickness (acn units).
    pub band_error: f64,
    /// Richardson estimate of the quadrature error (acn units); zero unless
    /// refinement was requested.
    pub quadrature_error: f64,
}

impl GaussIntegrals {
    pub fn acn_error(&self) -> f64 {
        self.band_error + self.quadrature_error
    }
}

/// Evaluate the double sums at refinement `level` with Near/Far threshold
/// `threshold` (intrinsic distance).
pub fn gauss_sums(
    curve: &SampledCurve,
    table: &ArcTable,
    threshold: f64,
    radius: f64,
    level: usize,
) -> GaussSums {
    let m = curve.segment_count();
    let rows = par_rows(m, |i| {
        let mut abs_sum = 0.0;
        let mut signed_sum = 0.0;
        let mut near = 0.0;
        let mut far = 0.0;
        let mut max_near: f64 = 0.0;
        for j in i + 1..m {
            if curve.segments_touch(i, j) {
                continue;
            }
            let c = table.tangents[i].cross(&table.tangents[j]);
            let k = split_count(curve, table, i, j, level);
            for_each_subpair(curve, table, i, j, k, |sp| {
                let d = sp.x - sp.y;
                let r2 = d.norm_squared();
                let f = c.dot(&d) / (r2 * r2.sqrt());
                let af = f.abs();
                abs_sum += af * sp.weight;
                signed_sum += f * sp.weight;
                if table.arc_between(sp.sx, sp.sy) <= threshold {
                    near += af * sp.weight;
                    max_near = max_near.max(af * radius * radius);
                } else {
                    far += af * sp.weight;
                }
            });
        }
        // each unordered pair stands for both orderings
        [2.0 * abs_sum, 2.0 * signed_sum, 2.0 * near, 2.0 * far, max_near]
    });
    let column = |c: usize| tree_sum(&rows.iter().map(|r| r[c]).collect::<Vec<_>>());
    GaussSums {
        abs_total: column(0),
        signed_total: column(1),
        near: column(2),
        far: column(3),
        max_near_integrand: rows.iter().map(|r| r[4]).fold(0.0, f64::max),
    }
}

fn require_closed(curve: &SampledCurve) -> Result<()> {
    if curve.is_closed() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "crossing integrals are defined for closed curves only".into(),
        ))
    }
}

/// Average crossing number, writhe and the Near/Far split in one pass.
///
/// `refine` adds a Richardson estimate from a second pass with every pair
/// subdivision doubled.
pub fn gauss_integrals(curve: &SampledCurve, refine: bool) -> Result<GaussIntegrals> {
    require_closed(curve)?;
    let radius = thickness_radius(curve)?;
    gauss_integrals_with_thickness(curve, radius, refine)
}

/// As [`gauss_integrals`] with a precomputed thickness radius.
pub fn gauss_integrals_with_thickness(
    curve: &SampledCurve,
    radius: f64,
    refine: bool,
) -> Result<GaussIntegrals> {
    require_closed(curve)?;
    let table = build_arc_table(curve);
    let threshold = PI * radius;
    let base = gauss_sums(curve, &table, threshold, radius, 1);
    let norm = 1.0 / (4.0 * PI);
    let quadrature_error = if refine {
        let fine = gauss_sums(curve, &table, threshold, radius, 2);
        norm * richardson(base.abs_total, fine.abs_total)
            .max(richardson(base.signed_total, fine.signed_total))
    } else {
        0.0
    };
    let band_error = norm * NEAR_INTEGRAND_BOUND / (radius * radius) * band_area(&table);
    Ok(GaussIntegrals {
        acn: norm * base.abs_total,
        writhe: norm * base.signed_total,
        near: base.near,
        far: base.far,
        thickness: radius,
        max_near_integrand: base.max_near_integrand,
        band_error,
        quadrature_error,
    })
}

/// Average crossing number `(1/4π) ∫∫ |⟨T_x, T_y, x−y⟩| / |x−y|³`, with its
/// error estimate.
pub fn acn(curve: &SampledCurve) -> Result<(f64, f64)> {
    let g = gauss_integrals(curve, false)?;
    Ok((g.acn, g.acn_error()))
}

/// Gauss writhe: the crossing integral without the absolute value.
pub fn writhe(curve: &SampledCurve) -> Result<(f64, f64)> {
    let g = gauss_integrals(curve, false)?;
    Ok((g.writhe, g.acn_error()))
}

/// `(Near, Far)`: the crossing double integral split at `arc(x, y) = πR`.
pub fn near_far_split(curve: &SampledCurve) -> Result<(f64, f64)> {
    let g = gauss_integrals(curve, false)?;
    Ok((g.near, g.far))
}

/// Crossing integral without the thickness-dependent Near/Far split, for
/// benchmarking the raw kernel.
pub fn acn_kernel(curve: &SampledCurve) -> Result<f64> {
    require_closed(curve)?;
    check_embedded(curve)?;
    let table = build_arc_table(curve);
    Ok(gauss_sums(curve, &table, 0.0, 1.0, 1).abs_total / (4.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec3;

    fn circle(n: usize) -> SampledCurve {
        let pts = (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                Vec3::new(t.cos(), t.sin(), 0.0)
            })
            .collect();
        SampledCurve::new(pts, true).unwrap()
    }

    #[test]
    fn planar_circle_has_no_crossings() {
        let g = gauss_integrals(&circle(256), true).unwrap();
        assert!(g.acn.abs() < 1e-9);
        assert!(g.writhe.abs() < 1e-9);
        assert_eq!(g.far, 0.0);
        assert!(g.near.abs() < 1e-9);
    }

    #[test]
    fn constants() {
        assert!((NEAR_INTEGRAND_BOUND - 1.9378922925187385).abs() < 1e-12);
        assert!((NEAR_INNER_BOUND - PI.powi(4) / 8.0).abs() < 1e-12);
    }

    #[test]
    fn open_curves_rejected() {
        let c = SampledCurve::from_points(&[[0., 0., 0.], [1., 0., 0.], [1., 1., 0.]], false)
            .unwrap();
        assert!(matches!(acn(&c), Err(Error::Unsupported(_))));
    }
}
