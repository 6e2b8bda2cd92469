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

use super::polytope::{Point3, Polytope3};
use crate::optim::{hemisphere, nelder_mead, sphere_chart, tangent_basis};
use crate::planar::{min_enclosing_circle, Point2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderConfig {
    /// Icosphere subdivision level of the direction grid (5 gives 10242 directions).
    pub grid_level: u32,
    /// Evaluation budget of each local polish run; zero disables polishing.
    pub refine_evals: usize,
    /// Number of distinct grid minima that are polished.
    pub polish_starts: usize,
}

impl Default for CylinderConfig {
    fn default() -> Self {
        Self { grid_level: 5, refine_evals: 4000, polish_starts: 4 }
    }
}

/// Circumscribing cylinder; the diameter is an upper bound on the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderResult {
    pub diameter: f64,
    pub axis_point: Point3,
    pub axis_direction: Point3,
}

/// Smallest cylinder with axis direction `u` containing the body.
pub fn cylinder_along(k: &Polytope3, u: &Point3) -> CylinderResult {
    let u = u.normalize();
    let (a, b) = tangent_basis(&u);
    let pts: Vec<Point2> = k.vertices().iter().map(|v| Point2::new(v.dot(&a), v.dot(&b))).collect();
    let c = min_enclosing_circle(&pts);
    CylinderResult { diameter: c.diameter(), axis_point: a * c.center.x + b * c.center.y, axis_direction: u }
}

/// Minimal circumscribing cylinder: hemisphere grid search over axis
/// directions followed by Nelder–Mead polishing on the sphere.
pub fn min_cylinder(k: &Polytope3, cfg: &CylinderConfig) -> CylinderResult {
    let dirs = hemisphere(cfg.grid_level);
    let mut scored: Vec<(f64, Point3)> = dirs.iter().map(|u| (cylinder_along(k, u).diameter, *u)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = cylinder_along(k, &scored[0].1);
    if cfg.refine_evals == 0 {
        return best;
    }
    let spacing = 1.2 / 2f64.powi(cfg.grid_level as i32);
    let mut starts: Vec<Point3> = Vec::new();
    for (_, u) in &scored {
        if starts.len() >= cfg.polish_starts {
            break;
        }
        if starts.iter().all(|s| s.dot(u).abs() < (2.0 * spacing).cos()) {
            starts.push(*u);
        }
    }
    for s in starts {
        let basis = tangent_basis(&s);
        let m = nelder_mead(
            |p| cylinder_along(k, &sphere_chart(&s, &basis, p)).diameter,
            &[0.0, 0.0],
            spacing,
            1e-15,
            cfg.refine_evals,
            10,
        );
        let cand = cylinder_along(k, &sphere_chart(&s, &basis, &m.x));
        if cand.diameter < best.diameter {
            best = cand;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_hull;

    #[test]
    fn grid_minimum_is_monotone_under_refinement() {
        let k = build_hull(&[
            Point3::new(0.0, 0.3, 0.0),
            Point3::new(0.1, -0.3, 0.2),
            Point3::new(1.0, 0.1, 1.0),
            Point3::new(-1.0, 0.0, 0.9),
            Point3::new(0.2, 0.5, -0.4),
        ])
        .unwrap();
        let mut last = f64::INFINITY;
        for level in 0..5 {
            let cfg = CylinderConfig { grid_level: level, refine_evals: 0, polish_starts: 1 };
            let d = min_cylinder(&k, &cfg).diameter;
            assert!(d <= last + 1e-15);
            last = d;
        }
        let polished = min_cylinder(&k, &CylinderConfig::default()).diameter;
        assert!(polished <= last + 1e-15);
    }

    #[test]
    fn every_vertex_inside_reported_cylinder() {
        let k = build_hull(&[
            Point3::new(0.0, 0.2, 0.0),
            Point3::new(0.0, -0.2, 0.0),
            Point3::new(1.0, 0.0, 1.0),
            Point3::new(-1.0, 0.0, 1.0),
        ])
        .unwrap();
        let c = min_cylinder(&k, &CylinderConfig { grid_level: 3, ..Default::default() });
        for v in k.vertices() {
            let d = v - c.axis_point;
            let radial = (d - c.axis_direction * d.dot(&c.axis_direction)).norm();
            assert!(radial <= c.diameter / 2.0 + 1e-12);
        }
    }
}
