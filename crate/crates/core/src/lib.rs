//! Curvature, thickness and crossing invariants of polygonal space curves,
//! with numerical certificates for the inequalities that relate them.

pub mod ball;
pub mod cli;
pub mod curve;
pub mod error;
pub mod generators;
pub mod geom;
pub mod invariants;
pub mod reduce;
pub mod sweep;
pub mod verify;

pub use curve::SampledCurve;
pub use error::{Error, Result};
pub use generators::{generate, CurveSpec, Family};
