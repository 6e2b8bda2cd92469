// Copyright 2026 The holdcircle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use serde::{Deserialize, Serialize};

use super::intersect::circle_interior_intersects;
use super::profile::{nonintersecting_edge_bound, slice_circumcircle, translation_block_certificate};
use super::report::{holding_report, HoldingConfig, HoldingReport, Verdict};
use super::Circle3;
use crate::convex::{Point3, Polytope3};
use crate::error::{GeomError, Result};
use crate::tol::TAU_OPT;
use crate::optim::{golden_min, hemisphere, nelder_mead, sphere_chart, tangent_basis};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Icosphere level of the grid of circle normals.
    pub grid_level: u32,
    /// Slices per normal when scanning the circumdiameter profile.
    pub heights: usize,
    /// Evaluation budget of the normal polish around each candidate.
    pub polish_evals: usize,
    /// Number of candidates polished and then certified, smallest first.
    pub candidates: usize,
    pub holding: HoldingConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { grid_level: 3, heights: 120, polish_evals: 300, candidates: 4, holding: HoldingConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoldingSearch {
    pub circle: Circle3,
    pub report: HoldingReport,
    /// Lower bound on `d` from non-adjacent edges.
    pub lower_bound: Option<f64>,
    /// Diameters of all certified candidates, ascending.
    pub certified_diameters: Vec<f64>,
    /// Largest certified diameter among the searched circles.
    pub delta_estimate: f64,
    pub candidates_checked: usize,
}

/// Circles at strict local minima of the slice circumdiameter along `normal`
/// that are exceeded on both sides. Such a circle is the circumcircle of its
/// slice, so it cannot enter the interior, and no translation along the
/// normal releases it.
///
/// Between consecutive vertex heights the slice vertices move linearly, so
/// the circumradius is convex there; each such piece is minimized by
/// golden-section search and `heights` only bounds the number of pieces that
/// are subdivided further for long bodies.
pub fn valley_circles(k: &Polytope3, normal: &Point3, heights: usize) -> Vec<Circle3> {
    let n = normal.normalize();
    let (lo, hi) = k.extent(&n);
    let span = hi - lo;
    if span <= 0.0 {
        return Vec::new();
    }
    let mut breaks: Vec<f64> = k.vertices().iter().map(|v| v.dot(&n)).collect();
    breaks.extend((1..heights.max(2)).map(|i| lo + span * i as f64 / heights.max(2) as f64));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * span);
    let diam = |t: f64| slice_circumcircle(k, &n, t).map_or(0.0, |(_, m)| m.diameter());
    // Profile samples: breakpoints interleaved with the minimum of each piece.
    let mut prof: Vec<(f64, f64)> = vec![(breaks[0], diam(breaks[0]))];
    for w in breaks.windows(2) {
        let (t, v) = golden_min(diam, w[0], w[1], 1e-13 * span.max(1.0));
        prof.push((t, v));
        prof.push((w[1], diam(w[1])));
    }
    // Runs of equal values are merged so that only strict minima remain.
    let eq_tol = 1e-12 * prof.iter().map(|p| p.1).fold(1.0, f64::max);
    prof.dedup_by(|b, a| (a.1 - b.1).abs() <= eq_tol);
    let mut prefix = vec![0.0_f64; prof.len() + 1];
    for (i, p) in prof.iter().enumerate() {
        prefix[i + 1] = prefix[i].max(p.1);
    }
    let mut suffix = vec![0.0_f64; prof.len() + 1];
    for i in (0..prof.len()).rev() {
        suffix[i] = suffix[i + 1].max(prof[i].1);
    }
    let mut out: Vec<Circle3> = Vec::new();
    for i in 1..prof.len().saturating_sub(1) {
        let v = prof[i].1;
        let (l, r) = (prof[i - 1].1, prof[i + 1].1);
        if !(v < l && v < r) || v <= 0.0 {
            continue;
        }
        let margin = v + TAU_OPT;
        if prefix[i] <= margin || suffix[i + 1] <= margin {
            continue;
        }
        if let Some((center, mec)) = slice_circumcircle(k, &n, prof[i].0) {
            let c = Circle3 { center, diameter: mec.diameter(), normal: n };
            let dup = out.iter().any(|e| (e.center - c.center).norm() <= 1e-9 * span.max(1.0));
            if !dup {
                out.push(c);
            }
        }
    }
    out
}

fn polish(k: &Polytope3, c: &Circle3, cfg: &SearchConfig, admissible: &dyn Fn(&Circle3) -> bool) -> Circle3 {
    if cfg.polish_evals == 0 {
        return *c;
    }
    let basis = tangent_basis(&c.normal);
    let reach = 0.25 * k.radius();
    let eval = |x: &[f64]| -> Option<Circle3> {
        let n = sphere_chart(&c.normal, &basis, x);
        valley_circles(k, &n, cfg.heights)
            .into_iter()
            .filter(|v| (v.center - c.center).norm() < reach && admissible(v))
            .min_by(|a, b| a.diameter.total_cmp(&b.diameter))
    };
    let m = nelder_mead(
        |x| eval(x).map_or(f64::INFINITY, |v| v.diameter),
        &[0.0, 0.0],
        0.02,
        1e-12,
        cfg.polish_evals,
        3,
    );
    match eval(&m.x) {
        Some(v) if v.diameter < c.diameter => v,
        _ => *c,
    }
}

/// Searches for the smallest circle whose holding report is
/// [`Verdict::CertifiedHoldingEvidence`]. Candidates are circumcircles of
/// slices at valleys of the circumdiameter profile over a grid of normals;
/// the smallest ones are polished over tilted normals and certified in
/// increasing order of diameter. The result is an upper bound on `d`.
pub fn min_holding_circle(k: &Polytope3, cfg: &SearchConfig) -> Result<HoldingSearch> {
    let mut normals = hemisphere(cfg.grid_level);
    normals.extend([Point3::x(), Point3::y(), Point3::z()]);
    let admissible = |c: &Circle3| {
        circle_interior_intersects(c, k, cfg.holding.tol.geom).is_none()
            && translation_block_certificate(k, c, cfg.holding.n_heights, cfg.holding.tol.opt) == (true, true)
    };
    let mut found: Vec<Circle3> = normals.iter().flat_map(|n| valley_circles(k, n, cfg.heights)).collect();
    found.sort_by(|a, b| a.diameter.total_cmp(&b.diameter));
    let scale = k.radius();
    let mut distinct: Vec<Circle3> = Vec::new();
    for c in found {
        let dup = distinct.iter().any(|e| {
            (e.center - c.center).norm() < 0.02 * scale && e.normal.dot(&c.normal).abs() > (0.05f64).cos()
        });
        if !dup && admissible(&c) {
            distinct.push(c);
        }
        if distinct.len() >= cfg.candidates {
            break;
        }
    }
    let mut polished: Vec<Circle3> = distinct.iter().map(|c| polish(k, c, cfg, &admissible)).collect();
    polished.sort_by(|a, b| a.diameter.total_cmp(&b.diameter));

    let mut best: Option<(Circle3, HoldingReport)> = None;
    let mut certified = Vec::new();
    let mut checked = 0;
    for c in &polished {
        checked += 1;
        let mut rep = holding_report(k, c, &HoldingConfig { with_chain: false, ..cfg.holding });
        if rep.verdict == Verdict::CertifiedHoldingEvidence {
            certified.push(c.diameter);
            if best.is_none() {
                if cfg.holding.with_chain {
                    rep = holding_report(k, c, &cfg.holding);
                }
                best = Some((*c, rep));
            }
        }
    }
    let (circle, report) = best.ok_or(GeomError::NotFound)?;
    let delta_estimate = certified.iter().cloned().fold(0.0, f64::max);
    Ok(HoldingSearch {
        circle,
        report,
        lower_bound: nonintersecting_edge_bound(k).map(|b| b.distance),
        certified_diameters: certified,
        delta_estimate,
        candidates_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::flat_tetrahedron;

    #[test]
    fn flat_tetrahedron_valley_is_the_reference_circle() {
        let f = flat_tetrahedron(0.2).unwrap();
        let v = valley_circles(&f.body, &Point3::z(), 120);
        assert_eq!(v.len(), 1);
        assert!((v[0].diameter - f.value("d").unwrap()).abs() < 1e-9);
        assert!((v[0].center.z - f.value("circle_altitude").unwrap()).abs() < 1e-6);
    }
}
