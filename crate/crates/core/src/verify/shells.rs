//! The discrete shell-label model of a curve seen from a basepoint.
//!
//! The curve is cut into `M` equal-length sub-arcs of length `ε < 1`; each
//! sub-arc is labelled by the integer shell `S[n, n+1]` it lies in, or the
//! single integer sphere it crosses. Counting labels per shell bounds the
//! illumination from above, and the label string obeys combinatorial
//! constraints that tie it to total curvature.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curve::{build_arc_table, point_at, SampledCurve};
use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, to_array, Vec3};
use crate::invariants::curvature::total_curvature;

/// Distances within this of an integer count as lying on that sphere.
const SPHERE_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelString {
    pub labels: Vec<u32>,
    pub epsilon: f64,
    pub kappa: f64,
    pub basepoint: [f64; 3],
}

impl LabelString {
    /// Adjacent labels differ by at most one.
    pub fn is_contiguous(&self) -> bool {
        self.labels.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1)
    }

    pub fn max_label(&self) -> u32 {
        self.labels.iter().copied().max().unwrap_or(2)
    }

    /// `M + 1`, the nominal top label.
    pub fn nominal_top(&self) -> u32 {
        self.labels.len() as u32 + 1
    }

    pub fn counts(&self) -> BTreeMap<u32, f64> {
        let mut phi = BTreeMap::new();
        for &a in &self.labels {
            *phi.entry(a).or_insert(0.0) += 1.0;
        }
        phi
    }
}

/// `β(n) = 8κ n^{3/2}/ε + 6n/ε`, unrounded.
pub fn beta(n: u32, kappa: f64, epsilon: f64) -> f64 {
    let n = f64::from(n);
    (8.0 * kappa * n.powf(1.5) + 6.0 * n) / epsilon
}

/// The polyline between arclengths `s0 < s1`.
fn sub_arc(curve: &SampledCurve, cumulative: &[f64], s0: f64, s1: f64, table: &crate::curve::ArcTable) -> Vec<Vec3> {
    let mut pts = vec![point_at(curve, table, s0)];
    let n = curve.len();
    for (k, &c) in cumulative.iter().enumerate().take(curve.segment_count()) {
        if c > s0 && c < s1 {
            pts.push(*curve.vertex(k % n));
        }
    }
    pts.push(point_at(curve, table, s1));
    pts
}

fn label_for(dmin: f64, dmax: f64) -> Result<u32> {
    let lo = (dmin - SPHERE_SNAP).ceil();
    let hi = (dmax + SPHERE_SNAP).floor();
    let label = if lo > hi {
        dmin.floor()
    } else if hi > lo {
        return Err(Error::Precondition(format!(
            "sub-arc spanning distances [{dmin}, {dmax}] crosses two integer spheres"
        )));
    } else if (lo - dmin).abs() <= SPHERE_SNAP {
        // touches S[m] from outside: inside S[m, m+1]
        lo
    } else if (dmax - lo).abs() <= SPHERE_SNAP {
        lo - 1.0
    } else {
        lo
    };
    Ok(label as u32)
}

/// Labels of `m` equal-length sub-arcs. Closed curves are cut open at
/// vertex 0.
pub fn shell_labels(curve: &SampledCurve, basepoint: &Vec3, m: usize) -> Result<LabelString> {
    let table = build_arc_table(curve);
    let length = table.total_length;
    if m == 0 || (m as f64) <= length {
        return Err(Error::Precondition(format!(
            "need M > L = {length} for sub-arcs shorter than 1, got M = {m}"
        )));
    }
    let epsilon = length / m as f64;
    let mut labels = Vec::with_capacity(m);
    for i in 0..m {
        let s0 = length * i as f64 / m as f64;
        let s1 = length * (i + 1) as f64 / m as f64;
        let pts = sub_arc(curve, &table.cumulative, s0, s1, &table);
        let dmax = pts.iter().map(|p| (p - basepoint).norm()).fold(0.0, f64::max);
        let dmin = pts
            .windows(2)
            .map(|w| point_segment_distance(basepoint, &w[0], &w[1]))
            .fold(f64::INFINITY, f64::min);
        if dmin < 2.0 - SPHERE_SNAP {
            return Err(Error::Precondition(format!(
                "sub-arc {i} comes within {dmin} of the basepoint; distance 2 required"
            )));
        }
        labels.push(label_for(dmin, dmax)?);
    }
    Ok(LabelString {
        labels,
        epsilon,
        kappa: total_curvature(curve),
        basepoint: to_array(basepoint),
    })
}

/// Per-shell counts `φ`, cumulative counts `Φ` and bounds `β`, over labels
/// `2..=top`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShellProfile {
    pub phi: BTreeMap<u32, f64>,
    #[serde(rename = "Phi")]
    pub cumulative: BTreeMap<u32, f64>,
    pub beta: BTreeMap<u32, f64>,
    /// Levels with `Φ(n) ≥ β(n)`.
    pub violations: Vec<u32>,
}

impl ShellProfile {
    pub fn from_counts(counts: &BTreeMap<u32, f64>, top: u32, kappa: f64, epsilon: f64) -> Self {
        let mut phi = BTreeMap::new();
        let mut cumulative = BTreeMap::new();
        let mut betas = BTreeMap::new();
        let mut violations = Vec::new();
        let mut running = 0.0;
        for n in 2..=top {
            let c = counts.get(&n).copied().unwrap_or(0.0);
            running += c;
            let b = beta(n, kappa, epsilon);
            phi.insert(n, c);
            cumulative.insert(n, running);
            betas.insert(n, b);
            if running >= b {
                violations.push(n);
            }
        }
        ShellProfile {
            phi,
            cumulative,
            beta: betas,
            violations,
        }
    }
}

pub fn shell_profile(ls: &LabelString) -> ShellProfile {
    let top = ls.nominal_top().max(ls.max_label());
    ShellProfile::from_counts(&ls.counts(), top, ls.kappa, ls.epsilon)
}

/// `E = Σ φ(n)·ε/(n−1)²`.
pub fn counts_energy(counts: &BTreeMap<u32, f64>, epsilon: f64) -> f64 {
    counts
        .iter()
        .map(|(&n, &c)| {
            let d = f64::from(n) - 1.0;
            c * epsilon / (d * d)
        })
        .sum()
}

pub fn string_energy(ls: &LabelString) -> f64 {
    counts_energy(&ls.counts(), ls.epsilon)
}

/// Maximum number of pairwise non-overlapping substrings `⟨n … n+2 … n⟩`
/// (overlap in one end term allowed), by earliest-right-end greedy.
pub fn count_jumps(labels: &[u32], n: u32) -> usize {
    let mut count = 0;
    let mut have_start = false;
    let mut have_peak = false;
    for &a in labels {
        if a == n {
            if have_start && have_peak {
                count += 1;
            }
            // this term can open the next jump
            have_start = true;
            have_peak = false;
        } else if a == n + 2 && have_start {
            have_peak = true;
        }
    }
    count
}

/// Disjoint substrings of length `⌈3(n+1)/ε⌉` with all labels ≤ `n`, and the
/// forward variant of length `⌈3(n+2)/ε⌉` with labels ≤ `n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubstringCounts {
    pub level: u32,
    pub at_most_n: usize,
    pub at_most_n_plus_one: usize,
}

fn disjoint_runs(labels: &[u32], ceiling: u32, length: usize) -> usize {
    let mut total = 0;
    let mut run = 0;
    for &a in labels.iter().chain(std::iter::once(&u32::MAX)) {
        if a <= ceiling {
            run += 1;
        } else {
            total += run / length;
            run = 0;
        }
    }
    total
}

pub fn substring_counts(ls: &LabelString, n: u32) -> SubstringCounts {
    let len = |k: u32| ((3.0 * f64::from(k)) / ls.epsilon).ceil().max(1.0) as usize;
    SubstringCounts {
        level: n,
        at_most_n: disjoint_runs(&ls.labels, n, len(n + 1)),
        at_most_n_plus_one: disjoint_runs(&ls.labels, n + 1, len(n + 2)),
    }
}

/// Constraint checks on a label string. `at_most_n ≤ κ` and
/// `at_most_n_plus_one < κ + 1` are the two substring readings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub contiguous: bool,
    pub substrings: Vec<SubstringCounts>,
    pub substring_ok: bool,
    pub substring_forward_ok: bool,
    /// `(n, jumps at level n, ½κ√(n+1))`.
    pub jumps: Vec<(u32, usize, f64)>,
    pub jumps_ok: bool,
}

pub fn check_constraints(ls: &LabelString) -> ConstraintReport {
    let top = ls.max_label();
    let substrings: Vec<SubstringCounts> = (2..=top).map(|n| substring_counts(ls, n)).collect();
    let jumps: Vec<(u32, usize, f64)> = (2..=top)
        .map(|n| {
            (
                n,
                count_jumps(&ls.labels, n),
                0.5 * ls.kappa * f64::from(n + 1).sqrt(),
            )
        })
        .collect();
    ConstraintReport {
        contiguous: ls.is_contiguous(),
        substring_ok: substrings.iter().all(|s| s.at_most_n as f64 <= ls.kappa),
        substring_forward_ok: substrings
            .iter()
            .all(|s| (s.at_most_n_plus_one as f64) < ls.kappa + 1.0),
        jumps_ok: jumps.iter().all(|&(_, j, bound)| (j as f64) < bound || j == 0),
        substrings,
        jumps,
    }
}

/// One elementary step of the extremal construction: `amount` labels moved
/// from `from` down to `to` (or appended at `to` when `from` is `None`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Move {
    pub from: Option<u32>,
    pub to: u32,
    pub amount: f64,
    pub energy_before: f64,
    pub energy_after: f64,
}

/// The energy-maximizing relabelling. Counts are real-valued because the
/// targets `β(n)` are used unrounded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalString {
    pub phi: BTreeMap<u32, f64>,
    pub top: u32,
    pub epsilon: f64,
    pub kappa: f64,
    pub moves: Vec<Move>,
}

impl ExtremalString {
    pub fn energy(&self) -> f64 {
        counts_energy(&self.phi, self.epsilon)
    }

    pub fn total(&self) -> f64 {
        self.phi.values().sum()
    }

    pub fn profile(&self) -> ShellProfile {
        ShellProfile::from_counts(&self.phi, self.top, self.kappa, self.epsilon)
    }

    /// Energy never went down across any step.
    pub fn monotone(&self) -> bool {
        self.moves
            .iter()
            .all(|m| m.energy_after >= m.energy_before * (1.0 - 1e-12))
    }
}

/// Raise `Φ(top)` to `β(top)` by appending top labels, then for
/// `n = 2, 3, …` lower the nearest higher labels to `n` until `Φ(n) = β(n)`.
///
/// The top level is `max(M+1, largest label)`.
pub fn construct_extremal_string(ls: &LabelString) -> Result<ExtremalString> {
    let profile = shell_profile(ls);
    if let Some(&n) = profile.violations.first() {
        return Err(Error::Precondition(format!(
            "Φ({n}) = {} is not below β({n}) = {}",
            profile.cumulative[&n], profile.beta[&n]
        )));
    }
    let top = ls.nominal_top().max(ls.max_label());
    let (kappa, epsilon) = (ls.kappa, ls.epsilon);
    let mut phi: BTreeMap<u32, f64> = (2..=top).map(|n| (n, 0.0)).collect();
    for (n, c) in ls.counts() {
        *phi.get_mut(&n).expect("label within range") += c;
    }
    let mut moves = Vec::new();

    let before = counts_energy(&phi, epsilon);
    let append = beta(top, kappa, epsilon) - ls.labels.len() as f64;
    *phi.get_mut(&top).expect("top level") += append;
    moves.push(Move {
        from: None,
        to: top,
        amount: append,
        energy_before: before,
        energy_after: counts_energy(&phi, epsilon),
    });

    // energy is linear in the counts, so each move shifts it by a closed form;
    // levels drained below the cursor are never refilled before n passes them
    let weight = |n: u32| {
        let d = f64::from(n) - 1.0;
        epsilon / (d * d)
    };
    let mut energy = moves[0].energy_after;
    let mut cumulative = 0.0;
    let mut cursor = 3;
    for n in 2..top {
        cumulative += phi[&n];
        let mut need = beta(n, kappa, epsilon) - cumulative;
        cursor = cursor.max(n + 1);
        while need > 0.0 && cursor <= top {
            let k = cursor;
            let take = phi[&k].min(need);
            if take <= 0.0 {
                cursor += 1;
                continue;
            }
            let energy_before = energy;
            *phi.get_mut(&k).expect("level") -= take;
            *phi.get_mut(&n).expect("level") += take;
            need -= take;
            cumulative += take;
            energy += take * (weight(n) - weight(k));
            moves.push(Move {
                from: Some(k),
                to: n,
                amount: take,
                energy_before,
                energy_after: energy,
            });
            if phi[&k] <= 0.0 {
                cursor += 1;
            }
        }
    }
    Ok(ExtremalString {
        phi,
        top,
        epsilon,
        kappa,
        moves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_line_segment;
    use proptest::prelude::*;

    fn ls(labels: &[u32], epsilon: f64, kappa: f64) -> LabelString {
        LabelString {
            labels: labels.to_vec(),
            epsilon,
            kappa,
            basepoint: [0.0; 3],
        }
    }

    #[test]
    fn radial_ray_labels() {
        let ray = gen_line_segment(&Vec3::new(2.0, 0.0, 0.0), &Vec3::new(7.0, 0.0, 0.0), 11).unwrap();
        let l = shell_labels(&ray, &Vec3::zeros(), 10).unwrap();
        assert_eq!(l.labels, vec![2, 2, 3, 3, 4, 4, 5, 5, 6, 6]);
        assert!((l.epsilon - 0.5).abs() < 1e-15);
    }

    #[test]
    fn inside_first_shell_all_twos() {
        let seg = gen_line_segment(&Vec3::new(2.1, 0.0, 0.0), &Vec3::new(2.1, 1.0, 0.5), 4).unwrap();
        let l = shell_labels(&seg, &Vec3::zeros(), 3).unwrap();
        assert!(l.labels.iter().all(|&a| a == 2));
    }

    #[test]
    fn labels_need_short_sub_arcs() {
        let ray = gen_line_segment(&Vec3::new(2.0, 0.0, 0.0), &Vec3::new(7.0, 0.0, 0.0), 11).unwrap();
        assert!(shell_labels(&ray, &Vec3::zeros(), 5).is_err());
    }

    #[test]
    fn profile_counts() {
        let p = shell_profile(&ls(&[2, 2, 3], 0.5, 1.0));
        assert_eq!(p.phi[&2], 2.0);
        assert_eq!(p.phi[&3], 1.0);
        assert_eq!(p.cumulative[&3], 3.0);
        assert_eq!(p.cumulative[&4], 3.0);
        assert!(p.violations.is_empty());
    }

    #[test]
    fn energy_of_two_twos() {
        assert_eq!(string_energy(&ls(&[2, 2], 0.5, 0.0)), 1.0);
    }

    #[test]
    fn jump_examples() {
        assert_eq!(count_jumps(&[2, 3, 4, 3, 2], 2), 1);
        assert_eq!(count_jumps(&[2, 3, 2, 3, 2], 2), 0);
        assert_eq!(count_jumps(&[2, 3, 4, 3, 2, 3, 4, 3, 2], 2), 2);
        assert_eq!(count_jumps(&[3, 4, 5, 4, 3, 2], 3), 1);
    }

    #[test]
    fn substring_runs() {
        // ε = 1.5 at level 2: length ⌈9/1.5⌉ = 6
        let l = ls(&[2; 13], 1.5, 1.0);
        assert_eq!(substring_counts(&l, 2).at_most_n, 2);
    }

    #[test]
    fn extremal_single_shell() {
        let l = ls(&[2, 2, 2], 0.5, 1.0);
        let e = construct_extremal_string(&l).unwrap();
        assert_eq!(e.top, 4);
        for n in 2..=4 {
            assert!((e.profile().cumulative[&n] - beta(n, 1.0, 0.5)).abs() < 1e-9);
        }
        assert!(e.monotone());
        assert!(e.energy() >= string_energy(&l));
        assert!(e.energy() < 16.0 + 43.0);
    }

    /// Largest number of non-overlapping jumps by trying every chain.
    fn brute_force_jumps(labels: &[u32], n: u32) -> usize {
        let mut intervals = Vec::new();
        for l in 0..labels.len() {
            for r in l + 1..labels.len() {
                if labels[l] == n && labels[r] == n && labels[l..r].contains(&(n + 2)) {
                    intervals.push((l, r));
                }
            }
        }
        fn best(intervals: &[(usize, usize)], from: usize) -> usize {
            intervals
                .iter()
                .filter(|&&(l, _)| l >= from)
                .map(|&(_, r)| 1 + best(intervals, r))
                .max()
                .unwrap_or(0)
        }
        best(&intervals, 0)
    }

    fn contiguous_string() -> impl Strategy<Value = Vec<u32>> {
        (2u32..5, proptest::collection::vec(-1i32..=1, 0..20)).prop_map(|(start, steps)| {
            let mut v = vec![start];
            for s in steps {
                let next = (*v.last().unwrap() as i32 + s).max(2) as u32;
                v.push(next);
            }
            v.truncate(20);
            v
        })
    }

    proptest! {
        #[test]
        fn greedy_jumps_are_optimal(labels in contiguous_string(), n in 2u32..6) {
            prop_assert_eq!(count_jumps(&labels, n), brute_force_jumps(&labels, n));
        }

        #[test]
        fn greedy_jumps_optimal_on_arbitrary_strings(
            labels in proptest::collection::vec(2u32..7, 0..=16), n in 2u32..5
        ) {
            prop_assert_eq!(count_jumps(&labels, n), brute_force_jumps(&labels, n));
        }

        #[test]
        fn extremal_construction_properties(
            labels in contiguous_string(), kappa in 0.0f64..20.0, m_extra in 0usize..5
        ) {
            let eps = 0.9 / (1.0 + m_extra as f64);
            let l = ls(&labels, eps, kappa);
            prop_assume!(shell_profile(&l).violations.is_empty());
            let e = construct_extremal_string(&l).unwrap();
            prop_assert!(e.monotone());
            prop_assert!(e.energy() >= string_energy(&l) * (1.0 - 1e-12));
            let p = e.profile();
            for n in 2..=e.top {
                let b = beta(n, kappa, eps);
                prop_assert!((p.cumulative[&n] - b).abs() <= 1e-9 * b);
                if n >= 3 {
                    let d = b - beta(n - 1, kappa, eps);
                    prop_assert!((p.phi[&n] - d).abs() <= 1e-9 * b);
                }
            }
            prop_assert!(e.energy() < 16.0 + 43.0 * kappa);
        }
    }
}
