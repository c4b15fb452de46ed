//! Certificates for the packing, oscillation and illumination inequalities
//! and for the crossing-number theorem they combine into.

use std::f64::consts::PI;

use crate::ball::min_enclosing_ball;
use crate::curve::{build_arc_table, resample, SampledCurve};
use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, Vec3};
use crate::invariants::curvature::total_curvature;
use crate::invariants::gauss::{gauss_integrals_with_thickness, NEAR_INNER_BOUND, NEAR_INTEGRAND_BOUND};
use crate::invariants::illumination::illumination;
use crate::invariants::thickness::{check_embedded, thickness};
use crate::verify::certificate::{curve_digest, BoundCertificate};
use crate::verify::shells::{
    check_constraints, construct_extremal_string, shell_labels, shell_profile, string_energy,
};

/// Illumination constants: `∫ 1/|y−x₀|² ≤ C1 + C2·κ` at distance ≥ 2.
pub const ILLUMINATION_C1: f64 = 16.0;
pub const ILLUMINATION_C2: f64 = 43.0;

/// The theorem's rounded constant.
pub const MAIN_CONSTANT: f64 = 4.0;

/// `(1/4π)(b + a/2π)` with `a = 2π·(π/4)(π/2)² + C1`, `b = C2`.
pub fn assembled_constant() -> f64 {
    let a = NEAR_INNER_BOUND + ILLUMINATION_C1;
    let b = ILLUMINATION_C2;
    (b + a / (2.0 * PI)) / (4.0 * PI)
}

/// Minimum distance from `point` to the curve, with the nearest vertex.
fn distance_to_curve(curve: &SampledCurve, point: &Vec3) -> (f64, usize) {
    let nearest_vertex = curve
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| ((v - point).norm(), i))
        .fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a });
    let on_segments = (0..curve.segment_count())
        .map(|i| {
            let (a, b) = curve.segment(i);
            point_segment_distance(point, a, b)
        })
        .fold(f64::INFINITY, f64::min);
    (on_segments, nearest_vertex.1)
}

/// `L ≤ ρ(κ+2)` for arcs, `L ≤ ρκ` for closed curves, plus the corollary
/// `L ≥ 3ρ ⇒ κ ≥ 1` whenever its hypothesis holds.
///
/// Without `rho` the minimal enclosing ball is used; a supplied `rho` is a
/// ball about the same center and must contain the curve.
pub fn check_packing(curve: &SampledCurve, rho: Option<f64>) -> Result<Vec<BoundCertificate>> {
    let ball = min_enclosing_ball(curve);
    let rho = match rho {
        Some(r) if r < ball.radius * (1.0 - 1e-12) => {
            let (far_index, far) = curve
                .vertices()
                .iter()
                .map(|v| (v - ball.center).norm())
                .enumerate()
                .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
            return Err(Error::Precondition(format!(
                "curve is not contained in the ball of radius {r}: vertex {far_index} lies at distance {far}"
            )));
        }
        Some(r) => r,
        None => ball.radius,
    };
    let length = build_arc_table(curve).total_length;
    let kappa = total_curvature(curve);
    let tol = 1e-9 * length;
    let digest = format!("{};rho={rho}", curve_digest(curve));
    let mut certs = Vec::new();
    if curve.is_closed() {
        certs.push(BoundCertificate::new("packing_closed", length, rho * kappa, tol, &digest));
    } else {
        certs.push(BoundCertificate::new("packing", length, rho * (kappa + 2.0), tol, &digest));
    }
    if length >= 3.0 * rho {
        certs.push(BoundCertificate::new("packing_corollary", 1.0, kappa, 1e-12, &digest));
    }
    Ok(certs)
}

/// Lower bounds on the total curvature of an arc that starts and ends on
/// the sphere of radius `a` about `center` and reaches the radius-`b`
/// sphere.
///
/// κ is taken from a 4× resampling of the arc; the change against the
/// as-given κ is attached to the tolerance.
pub fn check_oscillation(
    arc: &SampledCurve,
    a: f64,
    b: f64,
    center: &Vec3,
) -> Result<Vec<BoundCertificate>> {
    if arc.is_closed() {
        return Err(Error::Precondition("oscillation needs an open arc".into()));
    }
    if !(a > 0.0 && a < b) {
        return Err(Error::Precondition(format!("need 0 < a < b, got a = {a}, b = {b}")));
    }
    let v = arc.vertices();
    let tol_r = 1e-6 * b;
    for (name, p) in [("start", &v[0]), ("end", &v[v.len() - 1])] {
        let d = (p - center).norm();
        if (d - a).abs() > tol_r {
            return Err(Error::Precondition(format!(
                "arc {name} lies at distance {d}, not on the sphere of radius {a}"
            )));
        }
    }
    let reach = v.iter().map(|p| (p - center).norm()).fold(0.0, f64::max);
    if reach < b - tol_r {
        return Err(Error::Precondition(format!(
            "arc reaches distance {reach} only, short of {b}"
        )));
    }
    let kappa_given = total_curvature(arc);
    let refined = resample(arc, 4 * (arc.len() - 1) + 1)?;
    let kappa = total_curvature(&refined);
    let tol = (kappa - kappa_given).abs() + 1e-12;
    let digest = format!(
        "{};a={a};b={b};kappa=resampled_4x;refinement_delta={:e}",
        curve_digest(arc),
        (kappa - kappa_given).abs()
    );
    let mut certs = vec![BoundCertificate::new(
        "oscillation_arcsin",
        PI - 2.0 * (a / b).asin(),
        kappa,
        tol,
        &digest,
    )];
    if b >= a + 1.0 {
        certs.push(BoundCertificate::new(
            "oscillation_sqrt",
            2.0 * 2f64.sqrt() / (a + 1.0).sqrt(),
            kappa,
            tol,
            &digest,
        ));
        if a >= 2.0 {
            certs.push(BoundCertificate::new(
                "oscillation_simplified",
                2.0 / a.sqrt(),
                kappa,
                tol,
                &digest,
            ));
        }
    }
    Ok(certs)
}

fn require_distance_two(curve: &SampledCurve, basepoint: &Vec3) -> Result<()> {
    let (d, vertex) = distance_to_curve(curve, basepoint);
    if d < 2.0 - 1e-9 {
        return Err(Error::Precondition(format!(
            "curve comes within {d} of the basepoint (closest vertex {vertex}); distance 2 required"
        )));
    }
    Ok(())
}

/// `illumination ≤ 16 + 43κ` for a curve staying at distance ≥ 2.
pub fn check_illumination(curve: &SampledCurve, basepoint: &Vec3) -> Result<BoundCertificate> {
    require_distance_two(curve, basepoint)?;
    let il = illumination(curve, basepoint)?;
    let kappa = total_curvature(curve);
    Ok(BoundCertificate::new(
        "illumination",
        il.value,
        ILLUMINATION_C1 + ILLUMINATION_C2 * kappa,
        il.error,
        format!(
            "{};basepoint={:?};kappa=discrete",
            curve_digest(curve),
            [basepoint.x, basepoint.y, basepoint.z]
        ),
    ))
}

/// `illumination < 2κ + 3` for an arc whose distance from the basepoint
/// starts at ≥ 2 and never decreases.
pub fn check_monotone_illumination(
    curve: &SampledCurve,
    basepoint: &Vec3,
) -> Result<BoundCertificate> {
    if curve.is_closed() {
        return Err(Error::Precondition("monotone bound needs an open arc".into()));
    }
    require_distance_two(curve, basepoint)?;
    let v = curve.vertices();
    for i in 1..v.len() {
        let (d0, d1) = ((v[i - 1] - basepoint).norm(), (v[i] - basepoint).norm());
        // a segment's distance is monotone iff it is at both ends and the
        // foot of the perpendicular lies behind the start
        if d1 < d0 || (v[i] - v[i - 1]).dot(&(v[i - 1] - basepoint)) < -1e-12 {
            return Err(Error::Precondition(format!(
                "distance from the basepoint decreases along segment {}",
                i - 1
            )));
        }
    }
    let il = illumination(curve, basepoint)?;
    let kappa = total_curvature(curve);
    Ok(BoundCertificate::new(
        "illumination_monotone",
        il.value,
        2.0 * kappa + 3.0,
        il.error,
        format!("{};kappa=discrete", curve_digest(curve)),
    ))
}

/// The shell-label argument run on one curve: the label constraints, the
/// count bounds, and the chain
/// `illumination ≤ E(L_Y) ≤ E(L*) < 16 + 43κ`.
///
/// `m` defaults to `⌊2L⌋ + 1` sub-arcs.
pub fn check_shell_suite(
    curve: &SampledCurve,
    basepoint: &Vec3,
    m: Option<usize>,
) -> Result<Vec<BoundCertificate>> {
    require_distance_two(curve, basepoint)?;
    let length = build_arc_table(curve).total_length;
    let m = m.unwrap_or((2.0 * length).floor() as usize + 1);
    let ls = shell_labels(curve, basepoint, m)?;
    let profile = shell_profile(&ls);
    let constraints = check_constraints(&ls);
    let il = illumination(curve, basepoint)?;
    let energy = string_energy(&ls);
    let digest = format!(
        "{};M={m};epsilon={};kappa=discrete",
        curve_digest(curve),
        ls.epsilon
    );
    let max_step = ls
        .labels
        .windows(2)
        .map(|w| w[0].abs_diff(w[1]))
        .max()
        .unwrap_or(0);
    let worst_profile = profile
        .cumulative
        .iter()
        .map(|(n, c)| c / profile.beta[n])
        .fold(0.0, f64::max);
    let worst_substring = constraints
        .substrings
        .iter()
        .map(|s| s.at_most_n)
        .max()
        .unwrap_or(0);
    let worst_forward = constraints
        .substrings
        .iter()
        .map(|s| s.at_most_n_plus_one)
        .max()
        .unwrap_or(0);
    // jumps(n) < ½κ√(n+1) as jumps(n) − bound ≤ 0
    let worst_jump = constraints
        .jumps
        .iter()
        .filter(|j| j.1 > 0)
        .map(|&(_, j, bound)| j as f64 - bound)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut certs = vec![
        BoundCertificate::new("shell_contiguity", max_step as f64, 1.0, 0.0, &digest),
        BoundCertificate::new("shell_count_bound", worst_profile, 1.0, 0.0, &digest),
        BoundCertificate::new("shell_substrings", worst_substring as f64, ls.kappa, 0.0, &digest),
        BoundCertificate::new(
            "shell_substrings_forward",
            worst_forward as f64,
            ls.kappa + 1.0,
            0.0,
            &digest,
        ),
    ];
    if worst_jump.is_finite() {
        certs.push(BoundCertificate::new("shell_jumps", worst_jump, 0.0, 0.0, &digest));
    }
    certs.push(BoundCertificate::new(
        "illumination_vs_label_energy",
        il.value,
        energy,
        il.error,
        &digest,
    ));
    let extremal = construct_extremal_string(&ls)?;
    certs.push(BoundCertificate::new(
        "label_energy_vs_extremal",
        energy,
        extremal.energy(),
        1e-12 * extremal.energy(),
        &digest,
    ));
    certs.push(BoundCertificate::new(
        "extremal_energy",
        extremal.energy(),
        ILLUMINATION_C1 + ILLUMINATION_C2 * ls.kappa,
        0.0,
        &digest,
    ));
    Ok(certs)
}

/// Every quantity the crossing-number theorem rests on, at the curve's own
/// thickness.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MainTheoremInputs {
    pub length: f64,
    pub kappa: f64,
    pub thickness: f64,
    pub ropelength: f64,
    pub acn: f64,
    pub acn_error: f64,
    pub writhe: f64,
    pub near: f64,
    pub far: f64,
    pub max_near_integrand: f64,
}

pub fn main_theorem_inputs(curve: &SampledCurve, refine: bool) -> Result<MainTheoremInputs> {
    if !curve.is_closed() {
        return Err(Error::Precondition("the theorem concerns closed curves".into()));
    }
    check_embedded(curve)?;
    let t = thickness(curve)?;
    let g = gauss_integrals_with_thickness(curve, t.radius, refine)?;
    let length = build_arc_table(curve).total_length;
    Ok(MainTheoremInputs {
        length,
        kappa: total_curvature(curve),
        thickness: t.radius,
        ropelength: length / t.radius,
        acn: g.acn,
        acn_error: g.acn_error(),
        writhe: g.writhe,
        near: g.near,
        far: g.far,
        max_near_integrand: g.max_near_integrand,
    })
}

/// Certificates from precomputed inputs; see [`check_main_theorem`].
pub fn main_theorem_certificates(inputs: &MainTheoremInputs, digest: &str) -> Vec<BoundCertificate> {
    let MainTheoremInputs {
        kappa,
        ropelength: el,
        acn,
        acn_error,
        near,
        far,
        max_near_integrand,
        ..
    } = *inputs;
    let raw_error = 4.0 * PI * acn_error;
    let digest = format!("{digest};kappa=discrete;thickness=polygonal");
    vec![
        BoundCertificate::new("main_theorem", acn, MAIN_CONSTANT * el * kappa, acn_error, &digest),
        BoundCertificate::new(
            "main_theorem_assembled",
            acn,
            assembled_constant() * el * kappa,
            acn_error,
            &digest,
        ),
        BoundCertificate::new(
            "ropelength_lower_bound",
            acn / (MAIN_CONSTANT * kappa),
            el,
            acn_error / (MAIN_CONSTANT * kappa),
            &digest,
        ),
        BoundCertificate::new("near_bound", near / el, NEAR_INNER_BOUND, raw_error / el, &digest),
        BoundCertificate::new(
            "near_integrand",
            max_near_integrand,
            NEAR_INTEGRAND_BOUND,
            0.0,
            &digest,
        ),
        BoundCertificate::new(
            "far_bound",
            far / el,
            ILLUMINATION_C1 + ILLUMINATION_C2 * kappa,
            raw_error / el,
            &digest,
        ),
    ]
}

/// `acn < 4·E_L·κ`, the same with the assembled constant, and the Near and
/// Far bounds behind them (in units where the thickness is 1).
pub fn check_main_theorem(curve: &SampledCurve) -> Result<Vec<BoundCertificate>> {
    let inputs = main_theorem_inputs(curve, false)?;
    Ok(main_theorem_certificates(&inputs, &curve_digest(curve)))
}
