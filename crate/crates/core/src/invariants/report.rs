use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curve::{build_arc_table, SampledCurve};
use crate::error::Result;
use crate::invariants::curvature::total_curvature;
use crate::invariants::gauss::gauss_integrals_with_thickness;
use crate::invariants::mobius::mobius_energy_with_thickness;
use crate::invariants::thickness::thickness;

/// Every invariant of one closed curve plus estimated errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub length: f64,
    pub total_curvature: f64,
    pub thickness: f64,
    pub ropelength: f64,
    pub acn: f64,
    pub writhe: f64,
    pub mobius_energy: f64,
    pub near: f64,
    pub far: f64,
    pub error_estimates: BTreeMap<String, f64>,
}

pub fn compute_invariants(curve: &SampledCurve, refine: bool) -> Result<InvariantReport> {
    let length = build_arc_table(curve).total_length;
    let kappa = total_curvature(curve);
    let thick = thickness(curve)?;
    let radius = thick.radius;
    let gauss = gauss_integrals_with_thickness(curve, radius, refine)?;
    let mobius = mobius_energy_with_thickness(curve, radius, refine)?;

    let mut errors = BTreeMap::new();
    errors.insert("acn".to_string(), gauss.acn_error());
    errors.insert("writhe".to_string(), gauss.acn_error());
    // near + far = 4π·acn, so both share the raw-sum error
    let raw_error = 4.0 * std::f64::consts::PI * gauss.acn_error();
    errors.insert("near".to_string(), raw_error);
    errors.insert("far".to_string(), raw_error);
    errors.insert("mobius_energy".to_string(), mobius.error());
    if refine {
        errors.insert("acn_quadrature".to_string(), gauss.quadrature_error);
        errors.insert("mobius_energy_quadrature".to_string(), mobius.quadrature_error);
    }

    Ok(InvariantReport {
        length,
        total_curvature: kappa,
        thickness: radius,
        ropelength: length / radius,
        acn: gauss.acn,
        writhe: gauss.writhe,
        mobius_energy: mobius.value,
        near: gauss.near,
        far: gauss.far,
        error_estimates: errors,
    })
}

impl InvariantReport {
    pub fn error(&self, name: &str) -> f64 {
        self.error_estimates.get(name).copied().unwrap_or(0.0)
    }

    /// Header matching [`InvariantReport::csv_row`].
    pub fn csv_header() -> [&'static str; 10] {
        [
            "length",
            "total_curvature",
            "thickness",
            "ropelength",
            "acn",
            "writhe",
            "mobius_energy",
            "near",
            "far",
            "acn_error",
        ]
    }

    pub fn csv_row(&self) -> [String; 10] {
        [
            self.length,
            self.total_curvature,
            self.thickness,
            self.ropelength,
            self.acn,
            self.writhe,
            self.mobius_energy,
            self.near,
            self.far,
            self.error("acn"),
        ]
        .map(|x| x.to_string())
    }
}
