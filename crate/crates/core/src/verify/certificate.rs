use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::curve::SampledCurve;

/// Outcome of checking one inequality `lhs ≤ rhs` on concrete data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    pub pass: bool,
    pub tolerance_used: f64,
    /// What the numbers were computed from, and any substitutions made.
    pub inputs_digest: String,
}

impl BoundCertificate {
    pub fn new(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        inputs_digest: impl Into<String>,
    ) -> Self {
        let tolerance = tolerance.max(0.0);
        BoundCertificate {
            name: name.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: lhs <= rhs + tolerance,
            tolerance_used: tolerance,
            inputs_digest: inputs_digest.into(),
        }
    }

    /// Passes with the margin exceeding the tolerance, i.e. not merely
    /// within error.
    pub fn strict_pass(&self) -> bool {
        self.margin > self.tolerance_used
    }
}

/// SHA-256 over the closed flag and the vertex bit patterns, truncated to
/// 64 bits.
pub fn curve_fingerprint(curve: &SampledCurve) -> u64 {
    let mut h = Sha256::new();
    h.update([u8::from(curve.is_closed())]);
    for v in curve.vertices() {
        for c in v.iter() {
            h.update(c.to_bits().to_le_bytes());
        }
    }
    let digest = h.finalize();
    u64::from_be_bytes(digest[..8].try_into().expect("32-byte digest"))
}

pub fn curve_digest(curve: &SampledCurve) -> String {
    format!(
        "curve=sha256:{:016x};vertices={};closed={}",
        curve_fingerprint(curve),
        curve.len(),
        curve.is_closed()
    )
}

/// `name,lhs,rhs,margin,pass` summary.
pub fn certificates_csv(certs: &[BoundCertificate]) -> crate::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "lhs", "rhs", "margin", "pass"])?;
    for c in certs {
        w.write_record([
            c.name.clone(),
            c.lhs.to_string(),
            c.rhs.to_string(),
            c.margin.to_string(),
            c.pass.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_within_tolerance() {
        assert!(BoundCertificate::new("a", 1.0, 1.0, 0.0, "").pass);
        assert!(BoundCertificate::new("a", 1.0 + 1e-9, 1.0, 1e-8, "").pass);
        assert!(!BoundCertificate::new("a", 1.1, 1.0, 1e-8, "").pass);
        let c = BoundCertificate::new("a", 2.0, 5.0, 0.5, "");
        assert_eq!(c.margin, 3.0);
        assert!(c.strict_pass());
    }

    #[test]
    fn fingerprint_sees_every_bit() {
        let a = SampledCurve::from_points(&[[0., 0., 0.], [1., 0., 0.], [0., 1., 0.]], true).unwrap();
        let b = SampledCurve::from_points(&[[0., 0., 0.], [1., 0., 0.], [0., 1.0 + f64::EPSILON, 0.]], true)
            .unwrap();
        assert_ne!(curve_fingerprint(&a), curve_fingerprint(&b));
        assert_eq!(curve_fingerprint(&a), curve_fingerprint(&a.clone()));
    }

    #[test]
    fn csv_summary_columns() {
        let s = certificates_csv(&[BoundCertificate::new("packing", 1.0, 2.0, 0.0, "x")]).unwrap();
        assert_eq!(s, "name,lhs,rhs,margin,pass\npacking,1,2,1,true\n");
    }
}
