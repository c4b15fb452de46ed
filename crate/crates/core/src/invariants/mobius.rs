//! Möbius energy `∫∫ (1/|x−y|² − 1/arc(x,y)²)` as a regularized double sum.
//!
//! Pairs of segments sharing a vertex are excluded (a polygon's corners make
//! the integrand blow up there); what a smooth curve of the same thickness
//! could contribute on that band goes into the error estimate.

use std::f64::consts::PI;

use crate::curve::{build_arc_table, SampledCurve};
use crate::error::{Error, Result};
use crate::invariants::quadrature::{band_area, for_each_subpair, richardson, split_count};
use crate::invariants::thickness::thickness_radius;
use crate::reduce::{par_rows, tree_sum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusEnergy {
    pub value: f64,
    pub band_error: f64,
    pub quadrature_error: f64,
}

impl MobiusEnergy {
    pub fn error(&self) -> f64 {
        self.band_error + self.quadrature_error
    }
}

/// Supremum of `1/(4 sin²(θ/2)) − 1/θ²` on `(0, θ]`; the integrand bound
/// for unit thickness at intrinsic distance `θ ≤ π`.
fn regularized_bound(theta: f64) -> f64 {
    let theta = theta.min(PI);
    if theta < 1e-4 {
        return 1.0 / 12.0 + theta * theta / 240.0;
    }
    let s = (0.5 * theta).sin();
    1.0 / (4.0 * s * s) - 1.0 / (theta * theta)
}

fn mobius_sum(curve: &SampledCurve, level: usize) -> f64 {
    let table = build_arc_table(curve);
    let m = curve.segment_count();
    let rows = par_rows(m, |i| {
        let mut acc = 0.0;
        for j in i + 1..m {
            if curve.segments_touch(i, j) {
                continue;
            }
            let k = split_count(curve, &table, i, j, level);
            for_each_subpair(curve, &table, i, j, k, |sp| {
                let arc = table.arc_between(sp.sx, sp.sy);
                let chord2 = (sp.x - sp.y).norm_squared();
                acc += (1.0 / chord2 - 1.0 / (arc * arc)) * sp.weight;
            });
        }
        2.0 * acc
    });
    tree_sum(&rows)
}

pub fn mobius_energy_with_thickness(
    curve: &SampledCurve,
    radius: f64,
    refine: bool,
) -> Result<MobiusEnergy> {
    if !curve.is_closed() {
        return Err(Error::Unsupported(
            "Möbius energy is defined for closed curves only".into(),
        ));
    }
    let table = build_arc_table(curve);
    let value = mobius_sum(curve, 1);
    let quadrature_error = if refine {
        richardson(value, mobius_sum(curve, 2))
    } else {
        0.0
    };
    let longest = table.edge_lengths.iter().cloned().fold(0.0, f64::max);
    let band_error = regularized_bound(2.0 * longest / radius) / (radius * radius) * band_area(&table);
    Ok(MobiusEnergy {
        value,
        band_error,
        quadrature_error,
    })
}

pub fn mobius_energy(curve: &SampledCurve) -> Result<MobiusEnergy> {
    let radius = thickness_radius(curve)?;
    mobius_energy_with_thickness(curve, radius, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_is_continuous_at_small_angles() {
        let a = regularized_bound(0.999e-4);
        let b = regularized_bound(1.001e-4);
        assert!((a - b).abs() < 1e-6);
        assert!((regularized_bound(PI) - (0.25 - 1.0 / (PI * PI))).abs() < 1e-12);
    }
}
