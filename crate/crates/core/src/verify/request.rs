//! One certificate check described as data, shared by the CLI and the C API.

use serde::{Deserialize, Serialize};

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::verify::certificate::BoundCertificate;
use crate::verify::lemmas::{
    check_illumination, check_main_theorem, check_monotone_illumination, check_oscillation,
    check_packing, check_shell_suite,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Packing,
    Oscillation,
    Illumination,
    MonotoneIllumination,
    Shells,
    MainTheorem,
}

/// Which check to run and its parameters; fields a check does not use are
/// ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyRequest {
    pub which: Which,
    /// Basepoint for illumination and shells.
    #[serde(default)]
    pub basepoint: Option<[f64; 3]>,
    /// Enclosing-ball radius for packing (default: the minimal ball).
    #[serde(default)]
    pub rho: Option<f64>,
    /// Inner and outer sphere radii for oscillation.
    #[serde(default)]
    pub a: Option<f64>,
    #[serde(default)]
    pub b: Option<f64>,
    /// Sphere center for oscillation (default origin).
    #[serde(default)]
    pub center: Option<[f64; 3]>,
    /// Number of sub-arcs for shells.
    #[serde(default)]
    pub m: Option<usize>,
}

impl VerifyRequest {
    pub fn new(which: Which) -> Self {
        VerifyRequest {
            which,
            basepoint: None,
            rho: None,
            a: None,
            b: None,
            center: None,
            m: None,
        }
    }

    pub fn run(&self, curve: &SampledCurve) -> Result<Vec<BoundCertificate>> {
        let basepoint = || -> Result<Vec3> { Ok(Vec3::from(require(self.basepoint, "basepoint")?)) };
        match self.which {
            Which::Packing => check_packing(curve, self.rho),
            Which::Oscillation => check_oscillation(
                curve,
                require(self.a, "a")?,
                require(self.b, "b")?,
                &Vec3::from(self.center.unwrap_or([0.0; 3])),
            ),
            Which::Illumination => Ok(vec![check_illumination(curve, &basepoint()?)?]),
            Which::MonotoneIllumination => {
                Ok(vec![check_monotone_illumination(curve, &basepoint()?)?])
            }
            Which::Shells => check_shell_suite(curve, &basepoint()?, self.m),
            Which::MainTheorem => check_main_theorem(curve),
        }
    }
}

fn require<T>(value: Option<T>, name: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("`{name}` is required for this check")))
}
