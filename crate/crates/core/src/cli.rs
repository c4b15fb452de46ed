//! Command-line front end. Exit status: 0 success, 1 a certificate failed,
//! 2 bad input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::generators::{generate, CurveSpec};
use crate::invariants::oracle::projection_crossing_oracle;
use crate::invariants::report::compute_invariants;
use crate::sweep::{run_sweep, write_csv, SweepPlan};
use crate::verify::certificate::certificates_csv;
use crate::verify::request::{VerifyRequest, Which};

#[derive(Debug, Parser)]
#[command(name = "knotbound", version, about = "Curvature, thickness and crossing invariants of space curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a curve family and write it as curve JSON.
    Generate(GenerateArgs),
    /// Compute the invariant report of a closed curve.
    Invariants {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Add Richardson error estimates (doubles the cost).
        #[arg(long)]
        refine: bool,
    },
    /// Check inequalities on a curve; exit 1 if any fails.
    Verify(VerifyArgs),
    /// Run a sweep plan and write the CSV table.
    Sweep {
        plan: PathBuf,
        /// Overrides the plan's `output`.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Average crossing number by counting crossings of random projections.
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = 2000)]
        directions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyArg {
    TorusKnot,
    HelixComposite,
    Spiral,
    RoundedPolygon,
    FourierRandom,
    Circle,
    LineSegment,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Read the whole spec from a JSON file instead of flags.
    #[arg(long, conflicts_with = "family")]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum, required_unless_present = "spec")]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub major_radius: Option<f64>,
    #[arg(long)]
    pub minor_radius: Option<f64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub exponent: Option<f64>,
    #[arg(long)]
    pub theta_max: Option<f64>,
    /// Corner polygon as `x,y,z;x,y,z;…`.
    #[arg(long)]
    pub vertices: Option<String>,
    #[arg(long)]
    pub corner_radius: Option<f64>,
    #[arg(long)]
    pub modes: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, value_parser = parse_point)]
    pub start: Option<[f64; 3]>,
    #[arg(long, value_parser = parse_point)]
    pub end: Option<[f64; 3]>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum WhichArg {
    Packing,
    Oscillation,
    Illumination,
    MonotoneIllumination,
    Shells,
    MainTheorem,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::Packing => Which::Packing,
            WhichArg::Oscillation => Which::Oscillation,
            WhichArg::Illumination => Which::Illumination,
            WhichArg::MonotoneIllumination => Which::MonotoneIllumination,
            WhichArg::Shells => Which::Shells,
            WhichArg::MainTheorem => Which::MainTheorem,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub which: WhichArg,
    pub input: PathBuf,
    /// Basepoint `x,y,z` (illumination and shells).
    #[arg(long, value_parser = parse_point)]
    pub basepoint: Option<[f64; 3]>,
    /// Enclosing-ball radius for packing (default: the minimal ball).
    #[arg(long)]
    pub rho: Option<f64>,
    /// Inner and outer sphere radii for oscillation.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    /// Sphere center `x,y,z` for oscillation (default origin).
    #[arg(long, value_parser = parse_point)]
    pub center: Option<[f64; 3]>,
    /// Number of sub-arcs for shells.
    #[arg(long)]
    pub m: Option<usize>,
    /// Write the CSV summary instead of JSON.
    #[arg(long)]
    pub csv: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn parse_point(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got {s:?}"));
    }
    let mut p = [0.0; 3];
    for (slot, part) in p.iter_mut().zip(&parts) {
        *slot = part
            .parse::<f64>()
            .map_err(|e| format!("bad coordinate {part:?}: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("non-finite coordinate {part:?}"));
        }
    }
    Ok(p)
}

impl GenerateArgs {
    pub fn to_spec(&self) -> Result<CurveSpec> {
        if let Some(path) = &self.spec {
            return Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?);
        }
        let family = self.family.expect("clap enforces --family or --spec");
        let name = family
            .to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string();
        let mut obj = serde_json::Map::new();
        obj.insert("family".into(), name.clone().into());
        let mut put = |k: &str, v: Option<serde_json::Value>| {
            if let Some(v) = v {
                obj.insert(k.into(), v);
            }
        };
        use serde_json::json;
        put("samples", self.samples.map(|x| json!(x)));
        put("p", self.p.map(|x| json!(x)));
        put("q", self.q.map(|x| json!(x)));
        put("major_radius", self.major_radius.map(|x| json!(x)));
        put("minor_radius", self.minor_radius.map(|x| json!(x)));
        put("n", self.n.map(|x| json!(x)));
        put("exponent", self.exponent.map(|x| json!(x)));
        put("theta_max", self.theta_max.map(|x| json!(x)));
        put("corner_radius", self.corner_radius.map(|x| json!(x)));
        put("modes", self.modes.map(|x| json!(x)));
        put("seed", self.seed.map(|x| json!(x)));
        put("radius", self.radius.map(|x| json!(x)));
        put("start", self.start.map(|x| json!(x)));
        put("end", self.end.map(|x| json!(x)));
        if let Some(v) = &self.vertices {
            let pts = v
                .split(';')
                .map(parse_point)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(Error::InvalidParameter)?;
            put("vertices", Some(json!(pts)));
        }
        serde_json::from_value(serde_json::Value::Object(obj))
            .map_err(|e| Error::InvalidParameter(format!("{name}: {e}")))
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

impl VerifyArgs {
    pub fn request(&self) -> VerifyRequest {
        VerifyRequest {
            which: self.which.into(),
            basepoint: self.basepoint,
            rho: self.rho,
            a: self.a,
            b: self.b,
            center: self.center,
            m: self.m,
        }
    }
}

#[derive(Serialize)]
struct OracleReport {
    mean: f64,
    standard_error: f64,
    min_observed: usize,
    max_observed: usize,
    modal: usize,
    directions: usize,
    seed: u64,
}

/// Execute a parsed command; `Ok(true)` means every certificate passed.
pub fn execute(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Generate(args) => {
            let curve = generate(&args.to_spec()?)?;
            match &args.output {
                Some(path) => curve.save(path)?,
                None => emit(None, &format!("{}\n", curve.to_json_string()))?,
            }
            Ok(true)
        }
        Command::Invariants {
            input,
            output,
            refine,
        } => {
            let curve = SampledCurve::load(input)?;
            let report = compute_invariants(&curve, *refine)?;
            emit(output.as_deref(), &pretty(&report))?;
            Ok(true)
        }
        Command::Verify(args) => {
            let curve = SampledCurve::load(&args.input)?;
            let certs = args.request().run(&curve)?;
            let text = if args.csv {
                certificates_csv(&certs)?
            } else {
                pretty(&certs)
            };
            emit(args.output.as_deref(), &text)?;
            Ok(certs.iter().all(|c| c.pass))
        }
        Command::Sweep { plan, output } => {
            let plan = SweepPlan::load(plan)?;
            let rows = run_sweep(&plan)?;
            let target = output.clone().or_else(|| plan.output.clone());
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            emit(
                target.as_deref(),
                std::str::from_utf8(&buf).expect("csv output is utf-8"),
            )?;
            let failed = rows.iter().any(|r| {
                r.iter().any(|cell| cell == "false") || !r[crate::sweep::COLUMNS.len() - 1].is_empty()
            });
            Ok(!failed)
        }
        Command::Oracle {
            input,
            directions,
            seed,
            output,
        } => {
            let curve = SampledCurve::load(input)?;
            let o = projection_crossing_oracle(&curve, *directions, *seed)?;
            let report = OracleReport {
                mean: o.mean,
                standard_error: o.standard_error(),
                min_observed: o.min_observed,
                max_observed: o.max_observed,
                modal: o.modal(),
                directions: *directions,
                seed: *seed,
            };
            emit(output.as_deref(), &pretty(&report))?;
            Ok(true)
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_parsing() {
        assert_eq!(parse_point("1, 2.5,-3").unwrap(), [1.0, 2.5, -3.0]);
        assert!(parse_point("1,2").is_err());
        assert!(parse_point("1,2,nan").is_err());
    }

    #[test]
    fn flags_build_spec() {
        let cli = Cli::try_parse_from([
            "knotbound", "generate", "--family", "torus_knot", "--p", "2", "--q", "3",
            "--major-radius", "3", "--minor-radius", "1", "--samples", "64",
        ])
        .unwrap();
        let Command::Generate(args) = cli.command else { panic!() };
        let spec = args.to_spec().unwrap();
        assert_eq!(spec.samples, 64);
        assert_eq!(spec.family.name(), "torus_knot");
    }

    #[test]
    fn missing_parameter_is_reported() {
        let cli = Cli::try_parse_from(["knotbound", "generate", "--family", "torus_knot", "--samples", "64"]).unwrap();
        let Command::Generate(args) = cli.command else { panic!() };
        let err = args.to_spec().unwrap_err().to_string();
        assert!(err.contains("missing field"), "{err}");
    }
}
