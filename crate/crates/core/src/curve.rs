//! Polygonal curve representation, arclength bookkeeping and the JSON curve
//! file format.
//!
//! Smooth curves are always carried as inscribed polygons. Tangents live on
//! edges; turning happens at vertices.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{to_array, vec3, Vec3};

/// Free-form provenance attached to a curve.
pub type Meta = BTreeMap<String, serde_json::Value>;

/// An ordered 3D vertex sequence, open or closed.
///
/// Invariants (enforced by every constructor): at least 3 vertices, finite
/// coordinates, no zero-length edge, and for closed curves no repeated
/// closing vertex (the wraparound edge is implicit).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    vertices: Vec<Vec3>,
    closed: bool,
    meta: Meta,
}

#[derive(Serialize, Deserialize)]
struct CurveFile {
    closed: bool,
    vertices: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    meta: Meta,
}

impl SampledCurve {
    pub fn new(vertices: Vec<Vec3>, closed: bool) -> Result<Self> {
        Self::with_meta(vertices, closed, Meta::new())
    }

    pub fn with_meta(vertices: Vec<Vec3>, closed: bool, meta: Meta) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if let Some(index) = vertices.iter().position(|v| !v.iter().all(|c| c.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        if closed && vertices[0] == vertices[n - 1] {
            return Err(Error::DuplicateClosingVertex);
        }
        let edges = if closed { n } else { n - 1 };
        for i in 0..edges {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::ZeroLengthEdge { index: i });
            }
        }
        Ok(Self {
            vertices,
            closed,
            meta,
        })
    }

    pub fn from_points(points: &[[f64; 3]], closed: bool) -> Result<Self> {
        Self::new(points.iter().map(|p| vec3(*p)).collect(), closed)
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vec3 {
        &self.vertices[i]
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn meta(&self) -> &Meta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut Meta {
        &mut self.meta
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    /// Endpoints of segment `i` (from vertex `i` to vertex `i + 1`, wrapping
    /// for closed curves).
    pub fn segment(&self, i: usize) -> (&Vec3, &Vec3) {
        let n = self.vertices.len();
        (&self.vertices[i], &self.vertices[(i + 1) % n])
    }

    /// Whether segments `i` and `j` share a vertex (or are the same segment).
    pub fn segments_touch(&self, i: usize, j: usize) -> bool {
        let m = self.segment_count();
        let d = i.abs_diff(j);
        if self.closed {
            d <= 1 || d == m - 1
        } else {
            d <= 1
        }
    }

    fn map_vertices(&self, f: impl Fn(&Vec3) -> Vec3) -> Result<Self> {
        Self::with_meta(
            self.vertices.iter().map(f).collect(),
            self.closed,
            self.meta.clone(),
        )
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        self.map_vertices(|v| v * factor)
    }

    pub fn translated(&self, offset: &Vec3) -> Result<Self> {
        self.map_vertices(|v| v + offset)
    }

    /// Apply a rotation (or any 3×3 linear map) to every vertex.
    pub fn transformed(&self, matrix: &nalgebra::Matrix3<f64>) -> Result<Self> {
        self.map_vertices(|v| matrix * v)
    }

    /// Reflection through the plane `z = 0`.
    pub fn mirrored(&self) -> Result<Self> {
        self.map_vertices(|v| Vec3::new(v.x, v.y, -v.z))
    }

    /// Contiguous open sub-polyline through vertices `start..=end`.
    pub fn sub_path(&self, start: usize, end: usize) -> Result<Self> {
        if end >= self.vertices.len() || end < start + 2 {
            return Err(Error::InvalidParameter(format!(
                "sub-path {start}..={end} needs 3 vertices inside 0..{}",
                self.vertices.len()
            )));
        }
        Self::new(self.vertices[start..=end].to_vec(), false)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: CurveFile = serde_json::from_str(text)?;
        Self::with_meta(
            file.vertices.into_iter().map(vec3).collect(),
            file.closed,
            file.meta,
        )
    }

    pub fn to_json_string(&self) -> String {
        let file = CurveFile {
            closed: self.closed,
            vertices: self.vertices.iter().map(to_array).collect(),
            meta: self.meta.clone(),
        };
        serde_json::to_string_pretty(&file).expect("curve serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json_string();
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Cumulative arclength, edge lengths and unit edge tangents of a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcTable {
    /// Arclength position of each vertex; for closed curves one extra entry
    /// equal to the total length marks the return to vertex 0.
    pub cumulative: Vec<f64>,
    pub edge_lengths: Vec<f64>,
    pub tangents: Vec<Vec3>,
    pub total_length: f64,
    pub closed: bool,
}

pub fn build_arc_table(curve: &SampledCurve) -> ArcTable {
    let m = curve.segment_count();
    let mut cumulative = Vec::with_capacity(m + 1);
    let mut edge_lengths = Vec::with_capacity(m);
    let mut tangents = Vec::with_capacity(m);
    let mut s = 0.0;
    cumulative.push(0.0);
    for i in 0..m {
        let (a, b) = curve.segment(i);
        let d = b - a;
        let len = d.norm();
        edge_lengths.push(len);
        tangents.push(d / len);
        s += len;
        cumulative.push(s);
    }
    ArcTable {
        cumulative,
        edge_lengths,
        tangents,
        total_length: s,
        closed: curve.is_closed(),
    }
}

impl ArcTable {
    pub fn vertex_count(&self) -> usize {
        if self.closed {
            self.cumulative.len() - 1
        } else {
            self.cumulative.len()
        }
    }

    /// Intrinsic distance between two arclength positions.
    pub fn arc_between(&self, s: f64, t: f64) -> f64 {
        let d = (s - t).abs();
        if self.closed {
            d.min(self.total_length - d)
        } else {
            d
        }
    }

    /// Arclength position of the midpoint of segment `i`.
    pub fn segment_midpoint_arc(&self, i: usize) -> f64 {
        self.cumulative[i] + 0.5 * self.edge_lengths[i]
    }
}

/// Intrinsic distance between vertices `i` and `j`: the shorter way round
/// for closed curves.
pub fn arc_distance(table: &ArcTable, i: usize, j: usize) -> Result<f64> {
    let n = table.vertex_count();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
    }
    Ok(table.arc_between(table.cumulative[i], table.cumulative[j]))
}

/// Point at arclength `s` along the curve (wrapped for closed curves,
/// clamped for open ones).
pub fn point_at(curve: &SampledCurve, table: &ArcTable, s: f64) -> Vec3 {
    let total = table.total_length;
    let s = if curve.is_closed() {
        s.rem_euclid(total)
    } else {
        s.clamp(0.0, total)
    };
    let m = table.edge_lengths.len();
    // last segment whose start is <= s
    let seg = table.cumulative[..m]
        .partition_point(|&c| c <= s)
        .saturating_sub(1);
    let (a, b) = curve.segment(seg);
    let f = ((s - table.cumulative[seg]) / table.edge_lengths[seg]).clamp(0.0, 1.0);
    a + (b - a) * f
}

/// Resample at `n` vertices spaced equally in arclength along the input
/// polygon. Open curves keep both endpoints; closed curves start at vertex 0.
pub fn resample(curve: &SampledCurve, n: usize) -> Result<SampledCurve> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "resample needs n >= 3, got {n}"
        )));
    }
    let table = build_arc_table(curve);
    let total = table.total_length;
    let mut vertices = Vec::with_capacity(n);
    if curve.is_closed() {
        let step = total / n as f64;
        for k in 0..n {
            vertices.push(point_at(curve, &table, step * k as f64));
        }
    } else {
        let step = total / (n - 1) as f64;
        vertices.push(curve.vertices()[0]);
        for k in 1..n - 1 {
            vertices.push(point_at(curve, &table, step * k as f64));
        }
        vertices.push(*curve.vertices().last().expect("nonempty"));
    }
    SampledCurve::with_meta(vertices, curve.is_closed(), curve.meta().clone())
}
