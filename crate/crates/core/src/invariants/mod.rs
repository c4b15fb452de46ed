//! Continuous invariants of closed (and, where meaningful, open) curves.

pub mod curvature;
pub mod gauss;
pub mod illumination;
pub mod mobius;
pub mod oracle;
pub mod quadrature;
pub mod report;
pub mod thickness;

pub use curvature::{partial_curvature, total_curvature, turning_angles};
pub use gauss::{acn, gauss_integrals, near_far_split, writhe, GaussIntegrals};
pub use illumination::{illumination, Illumination};
pub use mobius::{mobius_energy, MobiusEnergy};
pub use oracle::{projection_crossing_oracle, ProjectionOracle};
pub use report::{compute_invariants, InvariantReport};
pub use thickness::{check_embedded, thickness, thickness_radius, Thickness};

use crate::curve::{build_arc_table, SampledCurve};
use crate::error::Result;

/// `L / R`, scale-invariant.
pub fn ropelength(curve: &SampledCurve) -> Result<f64> {
    let radius = thickness_radius(curve)?;
    Ok(build_arc_table(curve).total_length / radius)
}
