//! Midpoint-rule machinery shared by the pairwise double sums.
//!
//! Every ordered segment pair that shares no vertex is integrated with the
//! midpoint rule on a `k × k` grid of sub-segments. `k` grows with the ratio
//! of segment length to midpoint distance so close pairs are resolved, and
//! is multiplied by the refinement level for Richardson estimates.

use crate::curve::{ArcTable, SampledCurve};
use crate::geom::Vec3;

/// Largest per-pair subdivision.
const MAX_SPLIT: usize = 32;

/// One midpoint sample of a segment pair.
pub struct SubPair {
    pub x: Vec3,
    pub y: Vec3,
    /// arclength positions of `x` and `y`
    pub sx: f64,
    pub sy: f64,
    pub weight: f64,
}

/// Number of sub-segments per side for the pair `(i, j)` at refinement
/// level `level` (1 = base rule).
pub fn split_count(curve: &SampledCurve, table: &ArcTable, i: usize, j: usize, level: usize) -> usize {
    let (a0, a1) = curve.segment(i);
    let (b0, b1) = curve.segment(j);
    let d = ((a0 + a1) * 0.5 - (b0 + b1) * 0.5).norm();
    let longest = table.edge_lengths[i].max(table.edge_lengths[j]);
    let k = if d > 0.0 {
        (2.0 * longest / d).ceil() as usize
    } else {
        MAX_SPLIT
    };
    k.clamp(1, MAX_SPLIT) * level
}

#[inline]
pub fn for_each_subpair(
    curve: &SampledCurve,
    table: &ArcTable,
    i: usize,
    j: usize,
    k: usize,
    mut f: impl FnMut(&SubPair),
) {
    let (a0, a1) = curve.segment(i);
    let (b0, b1) = curve.segment(j);
    let da = (a1 - a0) / k as f64;
    let db = (b1 - b0) / k as f64;
    let la = table.edge_lengths[i] / k as f64;
    let lb = table.edge_lengths[j] / k as f64;
    let weight = la * lb;
    for p in 0..k {
        let fp = p as f64 + 0.5;
        let x = a0 + da * fp;
        let sx = table.cumulative[i] + la * fp;
        for q in 0..k {
            let fq = q as f64 + 0.5;
            f(&SubPair {
                x,
                y: b0 + db * fq,
                sx,
                sy: table.cumulative[j] + lb * fq,
                weight,
            });
        }
    }
}

/// `Σ_i ℓ_i (ℓ_{i-1} + ℓ_i + ℓ_{i+1})`: the measure of the excluded band of
/// ordered pairs sharing a vertex.
pub fn band_area(table: &ArcTable) -> f64 {
    let l = &table.edge_lengths;
    let m = l.len();
    (0..m)
        .map(|i| {
            let mut neighbours = l[i];
            if table.closed || i > 0 {
                neighbours += l[(i + m - 1) % m];
            }
            if table.closed || i + 1 < m {
                neighbours += l[(i + 1) % m];
            }
            l[i] * neighbours
        })
        .sum()
}

/// Richardson estimate for a second-order rule from the base and 2× sums.
pub fn richardson(base: f64, refined: f64) -> f64 {
    (refined - base).abs() / 3.0
}
