//! Parameter sweeps over one curve family, emitted as a fixed-column CSV.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{generate, CurveSpec};
use crate::invariants::mobius::mobius_energy_with_thickness;
use crate::reduce::{par_rows, with_workers};
use crate::verify::certificate::{curve_digest, BoundCertificate};
use crate::verify::lemmas::{check_packing, main_theorem_certificates, main_theorem_inputs};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Varying {
    pub name: String,
    pub values: Vec<serde_json::Number>,
}

/// What a sweep row may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepOutput {
    Invariants,
    Packing,
    MainTheorem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    /// A curve spec; the varying parameter overrides one of its fields.
    pub family: serde_json::Value,
    pub varying: Varying,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<SweepOutput>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
}

fn default_outputs() -> Vec<SweepOutput> {
    vec![SweepOutput::Invariants, SweepOutput::Packing, SweepOutput::MainTheorem]
}

fn default_parallelism() -> usize {
    1
}

/// The frozen CSV header.
pub const COLUMNS: [&str; 25] = [
    "curve_id",
    "parameter",
    "value",
    "L",
    "kappa",
    "R",
    "E_L",
    "acn",
    "writhe",
    "E_O",
    "near",
    "far",
    "packing_lhs",
    "packing_rhs",
    "packing_margin",
    "packing_pass",
    "main_theorem_lhs",
    "main_theorem_rhs",
    "main_theorem_margin",
    "main_theorem_pass",
    "main_theorem_assembled_lhs",
    "main_theorem_assembled_rhs",
    "main_theorem_assembled_margin",
    "main_theorem_assembled_pass",
    "error",
];

impl SweepPlan {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let plan: SweepPlan = serde_json::from_str(text)?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// Spec for one member, values sorted ascending.
    pub fn members(&self) -> Result<Vec<(serde_json::Number, CurveSpec)>> {
        let mut values = self.varying.values.clone();
        values.sort_by(|a, b| {
            let (x, y) = (a.as_f64().unwrap_or(f64::NAN), b.as_f64().unwrap_or(f64::NAN));
            x.total_cmp(&y)
        });
        values
            .into_iter()
            .map(|v| {
                let mut spec = self.family.clone();
                let obj = spec.as_object_mut().ok_or_else(|| {
                    Error::InvalidParameter("sweep family must be a JSON object".into())
                })?;
                obj.insert(self.varying.name.clone(), serde_json::Value::Number(v.clone()));
                let parsed: CurveSpec = serde_json::from_value(spec).map_err(|e| {
                    Error::InvalidParameter(format!(
                        "{} = {v} does not give a valid curve spec: {e}",
                        self.varying.name
                    ))
                })?;
                Ok((v, parsed))
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.varying.values.is_empty() {
            return Err(Error::InvalidParameter("sweep has no values to vary".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::InvalidParameter("parallelism must be >= 1".into()));
        }
        if let Some(bad) = self
            .varying
            .values
            .iter()
            .find(|v| !v.as_f64().is_some_and(f64::is_finite))
        {
            return Err(Error::InvalidParameter(format!("non-finite sweep value {bad}")));
        }
        self.members().map(|_| ())
    }
}

fn cert_cells(c: Option<&BoundCertificate>) -> [String; 4] {
    match c {
        Some(c) => [
            c.lhs.to_string(),
            c.rhs.to_string(),
            c.margin.to_string(),
            c.pass.to_string(),
        ],
        None => Default::default(),
    }
}

fn member_row(plan: &SweepPlan, value: &serde_json::Number, spec: &CurveSpec) -> Vec<String> {
    let mut row = vec![String::new(); COLUMNS.len()];
    row[0] = format!("{}_{}={}", spec.family.name(), plan.varying.name, value);
    row[1] = plan.varying.name.clone();
    row[2] = value.to_string();
    let wants = |o: SweepOutput| plan.outputs.contains(&o);
    let result = (|| -> Result<()> {
        let curve = generate(spec)?;
        if wants(SweepOutput::Invariants) || wants(SweepOutput::MainTheorem) {
            let inputs = main_theorem_inputs(&curve, false)?;
            if wants(SweepOutput::Invariants) {
                let mobius = mobius_energy_with_thickness(&curve, inputs.thickness, false)?;
                let cells = [
                    inputs.length,
                    inputs.kappa,
                    inputs.thickness,
                    inputs.ropelength,
                    inputs.acn,
                    inputs.writhe,
                    mobius.value,
                    inputs.near,
                    inputs.far,
                ];
                for (k, x) in cells.iter().enumerate() {
                    row[3 + k] = x.to_string();
                }
            }
            if wants(SweepOutput::MainTheorem) {
                let certs = main_theorem_certificates(&inputs, &curve_digest(&curve));
                let find = |n: &str| certs.iter().find(|c| c.name == n);
                row[16..20].clone_from_slice(&cert_cells(find("main_theorem")));
                row[20..24].clone_from_slice(&cert_cells(find("main_theorem_assembled")));
            }
        }
        if wants(SweepOutput::Packing) {
            let certs = check_packing(&curve, None)?;
            row[12..16].clone_from_slice(&cert_cells(certs.first()));
        }
        Ok(())
    })();
    if let Err(e) = result {
        row[24] = e.to_string();
    }
    row
}

/// Run every member (up to `parallelism` at once) and return rows in
/// ascending parameter order.
pub fn run_sweep(plan: &SweepPlan) -> Result<Vec<Vec<String>>> {
    plan.validate()?;
    let members = plan.members()?;
    Ok(with_workers(plan.parallelism, || {
        par_rows(members.len(), |k| member_row(plan, &members[k].0, &members[k].1))
    }))
}

pub fn write_csv(rows: &[Vec<String>], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}
