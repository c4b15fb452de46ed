//! C interface to knotbound.
//!
//! Curves live behind the opaque `KbCurve` handle. Every function returns a
//! `KbStatus`; on failure a message is available from `kb_last_error` on the
//! same thread. Strings handed out must be released with `kb_string_free`.
//! Panics never cross the boundary: they come back as `KB_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use knotbound::curve::{build_arc_table, SampledCurve};
use knotbound::generators::{generate, CurveSpec};
use knotbound::geom::Vec3;
use knotbound::invariants::report::compute_invariants;
use knotbound::invariants::{gauss_integrals, illumination, mobius_energy, thickness, total_curvature};
use knotbound::verify::VerifyRequest;
use knotbound::Error;

/// Opaque curve handle.
pub struct KbCurve {
    inner: SampledCurve,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KbStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    InvalidParameter = 4,
    /// Too few vertices, non-finite coordinates, repeated vertices.
    InvalidCurve = 5,
    SelfIntersection = 6,
    /// The quantity is not defined for this curve (e.g. open curves).
    Unsupported = 7,
    /// A check's hypothesis does not hold for the inputs.
    Precondition = 8,
    Degenerate = 9,
    Io = 10,
    Panic = 11,
}

struct Failure {
    status: KbStatus,
    message: String,
}

impl Failure {
    fn new(status: KbStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &Error) -> KbStatus {
    match err {
        Error::TooFewVertices(_)
        | Error::NonFinite { .. }
        | Error::ZeroLengthEdge { .. }
        | Error::DuplicateClosingVertex
        | Error::IndexOutOfRange { .. } => KbStatus::InvalidCurve,
        Error::SelfIntersection { .. } => KbStatus::SelfIntersection,
        Error::Unsupported(_) => KbStatus::Unsupported,
        Error::InvalidParameter(_) => KbStatus::InvalidParameter,
        Error::Precondition(_) => KbStatus::Precondition,
        Error::PersistentDegeneracy { .. } => KbStatus::Degenerate,
        Error::Json { .. } => KbStatus::InvalidJson,
        Error::Io(_) | Error::Csv(_) => KbStatus::Io,
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::new(status_of(&err), err.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(err: serde_json::Error) -> Self {
        Error::from(err).into()
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KbStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            set_last_error(&format!("internal panic: {message}"));
            KbStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::new(KbStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn curve_ref<'a>(curve: *const KbCurve) -> Result<&'a SampledCurve, Failure> {
    curve.as_ref().map(|c| &c.inner).ok_or_else(|| null("curve"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure::new(KbStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Optional outputs may be null.
unsafe fn write_opt<T>(out: *mut T, value: T) {
    if !out.is_null() {
        out.write(value);
    }
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(text).map_err(|e| Failure::new(KbStatus::InvalidUtf8, e.to_string()))?;
    out.write(c.into_raw());
    Ok(())
}

unsafe fn write_curve(out: *mut *mut KbCurve, inner: SampledCurve) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(KbCurve { inner })));
    Ok(())
}

/// Message of the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn kb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a curve from `n_vertices` packed `x, y, z` triples. A closed curve
/// must not repeat its first vertex at the end.
#[no_mangle]
pub unsafe extern "C" fn kb_curve_new(
    xyz: *const f64,
    n_vertices: usize,
    closed: bool,
    out: *mut *mut KbCurve,
) -> KbStatus {
    guard(|| {
        if xyz.is_null() {
            return Err(null("xyz"));
        }
        let coords = std::slice::from_raw_parts(xyz, 3 * n_vertices);
        let pts = coords.chunks_exact(3).map(|c| Vec3::new(c[0], c[1], c[2])).collect();
        write_curve(out, SampledCurve::new(pts, closed)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn kb_curve_free(curve: *mut KbCurve) {
    if !curve.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(curve))));
    }
}

#[no_mangle]
pub unsafe extern "C" fn kb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn kb_curve_vertex_count(curve: *const KbCurve, out: *mut usize) -> KbStatus {
    guard(|| write(out, curve_ref(curve)?.len(), "out"))
}

/// Copy the vertices into `xyz`, which must hold `3 * vertex_count` doubles.
#[no_mangle]
pub unsafe extern "C" fn kb_curve_vertices(curve: *const KbCurve, xyz: *mut f64) -> KbStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        if xyz.is_null() {
            return Err(null("xyz"));
        }
        let dst = std::slice::from_raw_parts_mut(xyz, 3 * c.len());
        for (slot, v) in dst.chunks_exact_mut(3).zip(c.vertices()) {
            slot.copy_from_slice(v.as_slice());
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn kb_curve_from_json(json: *const c_char, out: *mut *mut KbCurve) -> KbStatus {
    guard(|| write_curve(out, SampledCurve::from_json_str(str_arg(json, "json")?)?))
}

#[no_mangle]
pub unsafe extern "C" fn kb_curve_to_json(curve: *const KbCurve, out: *mut *mut c_char) -> KbStatus {
    guard(|| write_string(out, curve_ref(curve)?.to_json_string()))
}

/// Sample a curve family from a JSON spec such as
/// `{"family": "torus_knot", "p": 2, "q": 3, "major_radius": 3, "minor_radius": 1, "samples": 512}`.
#[no_mangle]
pub unsafe extern "C" fn kb_generate(spec_json: *const c_char, out: *mut *mut KbCurve) -> KbStatus {
    guard(|| {
        let spec: CurveSpec = serde_json::from_str(str_arg(spec_json, "spec_json")?)?;
        write_curve(out, generate(&spec)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn kb_length(curve: *const KbCurve, out: *mut f64) -> KbStatus {
    guard(|| write(out, build_arc_table(curve_ref(curve)?).total_length, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn kb_total_curvature(curve: *const KbCurve, out: *mut f64) -> KbStatus {
    guard(|| write(out, total_curvature(curve_ref(curve)?), "out"))
}

/// Thickness radius `min(minRad, dcsd/2)` of a closed curve.
#[no_mangle]
pub unsafe extern "C" fn kb_thickness(curve: *const KbCurve, out: *mut f64) -> KbStatus {
    guard(|| write(out, thickness(curve_ref(curve)?)?.radius, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn kb_ropelength(curve: *const KbCurve, out: *mut f64) -> KbStatus {
    guard(|| write(out, knotbound::invariants::ropelength(curve_ref(curve)?)?, "out"))
}

/// Average crossing number; `error` (may be null) receives its error bound.
#[no_mangle]
pub unsafe extern "C" fn kb_acn(curve: *const KbCurve, value: *mut f64, error: *mut f64) -> KbStatus {
    guard(|| {
        let g = gauss_integrals(curve_ref(curve)?, false)?;
        write(value, g.acn, "value")?;
        write_opt(error, g.acn_error());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn kb_writhe(curve: *const KbCurve, value: *mut f64, error: *mut f64) -> KbStatus {
    guard(|| {
        let g = gauss_integrals(curve_ref(curve)?, false)?;
        write(value, g.writhe, "value")?;
        write_opt(error, g.acn_error());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn kb_mobius_energy(
    curve: *const KbCurve,
    value: *mut f64,
    error: *mut f64,
) -> KbStatus {
    guard(|| {
        let e = mobius_energy(curve_ref(curve)?)?;
        write(value, e.value, "value")?;
        write_opt(error, e.error());
        Ok(())
    })
}

/// Illumination of the curve from `basepoint[3]`.
#[no_mangle]
pub unsafe extern "C" fn kb_illumination(
    curve: *const KbCurve,
    basepoint: *const f64,
    value: *mut f64,
    error: *mut f64,
) -> KbStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        if basepoint.is_null() {
            return Err(null("basepoint"));
        }
        let b = std::slice::from_raw_parts(basepoint, 3);
        let il = illumination(c, &Vec3::new(b[0], b[1], b[2]))?;
        write(value, il.value, "value")?;
        write_opt(error, il.error);
        Ok(())
    })
}

/// The full invariant report as JSON.
#[no_mangle]
pub unsafe extern "C" fn kb_invariants_json(
    curve: *const KbCurve,
    refine: bool,
    out: *mut *mut c_char,
) -> KbStatus {
    guard(|| {
        let report = compute_invariants(curve_ref(curve)?, refine)?;
        let text = serde_json::to_string(&report)?;
        write_string(out, text)
    })
}

/// Run one check, e.g. `{"which": "illumination", "basepoint": [0, 0, 5]}`,
/// and return its certificates as a JSON array. `all_pass` (may be null)
/// reports whether every certificate passed; a failed certificate is not an
/// error status.
#[no_mangle]
pub unsafe extern "C" fn kb_verify_json(
    curve: *const KbCurve,
    request_json: *const c_char,
    out: *mut *mut c_char,
    all_pass: *mut bool,
) -> KbStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        let request: VerifyRequest = serde_json::from_str(str_arg(request_json, "request_json")?)?;
        let certs = request.run(c)?;
        let text = serde_json::to_string(&certs)?;
        write_string(out, text)?;
        write_opt(all_pass, certs.iter().all(|c| c.pass));
        Ok(())
    })
}
