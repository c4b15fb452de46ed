//! Thickness radius of a closed polygon: `min(minRad, dcsd / 2)`.
//!
//! `minRad` is the smallest circumradius over consecutive vertex triples and
//! `dcsd` the smallest doubly-critical self-distance. Doubly-critical pairs
//! are found by seeding at every local minimum of the vertex-pair distance
//! and descending over segment parameters until no neighbouring segment pair
//! is closer.

use std::f64::consts::PI;

use serde::Serialize;

use crate::curve::{build_arc_table, SampledCurve};
use crate::error::{Error, Result};
use crate::geom::{circumradius, segment_segment};
use crate::reduce::par_rows;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPair {
    pub segment_a: usize,
    pub param_a: f64,
    pub segment_b: usize,
    pub param_b: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thickness {
    pub radius: f64,
    pub min_rad: f64,
    pub min_rad_vertex: usize,
    /// Infinite when no off-diagonal local minimum exists (e.g. a round circle).
    pub dcsd: f64,
    pub critical_pair: Option<CriticalPair>,
}

/// Smallest distance between segments that share no vertex, with the pair
/// realizing it. Fails when two such segments meet.
pub fn check_embedded(curve: &SampledCurve) -> Result<(f64, usize, usize)> {
    let m = curve.segment_count();
    let scale = build_arc_table(curve).total_length;
    let rows = par_rows(m, |i| {
        let (p0, p1) = curve.segment(i);
        let mut best = (f64::INFINITY, i, i);
        for j in i + 1..m {
            if curve.segments_touch(i, j) {
                continue;
            }
            let (q0, q1) = curve.segment(j);
            let (d, _, _) = segment_segment(p0, p1, q0, q1);
            if d < best.0 {
                best = (d, i, j);
            }
        }
        best
    });
    let best = rows
        .into_iter()
        .fold((f64::INFINITY, 0, 0), |acc, r| if r.0 < acc.0 { r } else { acc });
    if best.0 <= 1e-12 * scale {
        return Err(Error::SelfIntersection {
            first: best.1,
            second: best.2,
            distance: best.0,
        });
    }
    Ok(best)
}

pub fn thickness(curve: &SampledCurve) -> Result<Thickness> {
    if !curve.is_closed() {
        return Err(Error::Unsupported(
            "thickness radius is defined for closed curves only".into(),
        ));
    }
    check_embedded(curve)?;
    let v = curve.vertices();
    let n = v.len();

    let (min_rad_vertex, min_rad) = (0..n)
        .map(|i| (i, circumradius(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n])))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });

    let critical_pair = doubly_critical_pairs(curve)
        .into_iter()
        .min_by(|a, b| a.distance.total_cmp(&b.distance));
    let dcsd = critical_pair.map_or(f64::INFINITY, |p| p.distance);

    Ok(Thickness {
        radius: min_rad.min(0.5 * dcsd),
        min_rad,
        min_rad_vertex,
        dcsd,
        critical_pair,
    })
}

pub fn thickness_radius(curve: &SampledCurve) -> Result<f64> {
    Ok(thickness(curve)?.radius)
}

/// Off-diagonal local minima of the self-distance, refined onto segments.
pub fn doubly_critical_pairs(curve: &SampledCurve) -> Vec<CriticalPair> {
    let v = curve.vertices();
    let n = v.len();
    let dist = |i: usize, j: usize| (v[i % n] - v[j % n]).norm();
    let separation = |i: usize, j: usize| {
        let d = i.abs_diff(j);
        d.min(n - d)
    };

    let seeds: Vec<(usize, usize)> = par_rows(n, |i| {
        let mut local = Vec::new();
        for j in i + 2..n {
            if separation(i, j) < 2 {
                continue;
            }
            let d = dist(i, j);
            let is_min = [n - 1, 0, 1].iter().all(|&di| {
                [n - 1, 0, 1]
                    .iter()
                    .all(|&dj| (di == 0 && dj == 0) || d <= dist(i + di, j + dj))
            });
            if is_min {
                local.push((i, j));
            }
        }
        local
    })
    .into_iter()
    .flatten()
    .collect();

    let mut pairs: Vec<CriticalPair> = seeds
        .into_iter()
        .filter_map(|(i, j)| descend(curve, i, j))
        .collect();
    pairs.sort_by(|a, b| {
        (a.segment_a, a.segment_b)
            .cmp(&(b.segment_a, b.segment_b))
            .then(a.distance.total_cmp(&b.distance))
    });
    pairs.dedup_by(|a, b| a.segment_a == b.segment_a && a.segment_b == b.segment_b);
    pairs
}

fn pair_at(curve: &SampledCurve, a: usize, b: usize) -> CriticalPair {
    let (p0, p1) = curve.segment(a);
    let (q0, q1) = curve.segment(b);
    let (distance, param_a, param_b) = segment_segment(p0, p1, q0, q1);
    CriticalPair {
        segment_a: a,
        param_a,
        segment_b: b,
        param_b,
        distance,
    }
}

fn descend(curve: &SampledCurve, i: usize, j: usize) -> Option<CriticalPair> {
    let m = curve.segment_count();
    let prev = |k: usize| (k + m - 1) % m;
    let next = |k: usize| (k + 1) % m;

    let mut best = [(prev(i), prev(j)), (prev(i), j), (i, prev(j)), (i, j)]
        .into_iter()
        .filter(|&(a, b)| !curve.segments_touch(a, b))
        .map(|(a, b)| pair_at(curve, a, b))
        .min_by(|x, y| x.distance.total_cmp(&y.distance))?;

    for _ in 0..64 {
        let mut moves = Vec::with_capacity(2);
        let (a, b) = (best.segment_a, best.segment_b);
        let step_a = if best.param_a <= 0.0 {
            Some(prev(a))
        } else if best.param_a >= 1.0 {
            Some(next(a))
        } else {
            None
        };
        let step_b = if best.param_b <= 0.0 {
            Some(prev(b))
        } else if best.param_b >= 1.0 {
            Some(next(b))
        } else {
            None
        };
        if let Some(a2) = step_a {
            moves.push((a2, b));
        }
        if let Some(b2) = step_b {
            moves.push((a, b2));
        }
        if let (Some(a2), Some(b2)) = (step_a, step_b) {
            moves.push((a2, b2));
        }
        let mut improved = false;
        for (a2, b2) in moves {
            if curve.segments_touch(a2, b2) {
                // slid onto the diagonal: not an off-diagonal minimum
                return None;
            }
            let cand = pair_at(curve, a2, b2);
            if cand.distance < best.distance {
                best = cand;
                improved = true;
            }
        }
        if !improved {
            return Some(best);
        }
    }
    Some(best)
}

/// Thickness facts that smooth curves obey exactly; polygons obey them up to
/// discretization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThicknessConsequences {
    /// `min_i circumradius_i / R` (≥ 1 by construction).
    pub circumradius_ratio: f64,
    /// `min chord / 2R` over vertex pairs with `arc ≥ πR`; infinite if none.
    pub gap_ratio: f64,
    /// `min chord / (R·√(2 − 2cos(arc/R)))` over vertex pairs with
    /// `0 < arc ≤ πR`.
    pub schur_ratio: f64,
}

pub fn thickness_consequences(curve: &SampledCurve, radius: f64) -> ThicknessConsequences {
    let v = curve.vertices();
    let n = v.len();
    let table = build_arc_table(curve);
    let circumradius_ratio = (0..n)
        .map(|i| circumradius(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
        / radius;
    let rows = par_rows(n, |i| {
        let mut gap = f64::INFINITY;
        let mut schur = f64::INFINITY;
        for j in i + 1..n {
            let arc = table.arc_between(table.cumulative[i], table.cumulative[j]);
            let chord = (v[i] - v[j]).norm();
            if arc >= PI * radius {
                gap = gap.min(chord / (2.0 * radius));
            } else if arc > 0.0 {
                let theta = arc / radius;
                schur = schur.min(chord / (radius * (2.0 - 2.0 * theta.cos()).sqrt()));
            }
        }
        (gap, schur)
    });
    let (gap_ratio, schur_ratio) = rows.into_iter().fold(
        (f64::INFINITY, f64::INFINITY),
        |(g, s), (g2, s2)| (g.min(g2), s.min(s2)),
    );
    ThicknessConsequences {
        circumradius_ratio,
        gap_ratio,
        schur_ratio,
    }
}
