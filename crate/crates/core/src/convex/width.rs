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
use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WidthFeatures {
    FaceVertex { face: usize, vertex: usize },
    EdgeEdge { first: usize, second: usize },
}

/// Minimal breadth of a polytope, its direction and the antipodal features
/// attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WidthResult {
    pub width: f64,
    pub direction: Point3,
    pub features: WidthFeatures,
}

/// Exact width by enumeration of the two candidate families: face normals
/// (face–vertex pairs) and common normals of antipodal edge pairs.
pub fn width3(k: &Polytope3) -> Result<WidthResult> {
    let verts = k.vertices();
    let scale = k.radius().max(1.0);
    let tol = 1e-9 * scale;
    let mut best: Option<WidthResult> = None;
    let mut offer = |w: f64, dir: Point3, features: WidthFeatures| {
        if best.is_none_or(|b| w < b.width) {
            best = Some(WidthResult { width: w, direction: dir, features });
        }
    };

    for (fi, f) in k.faces().iter().enumerate() {
        let (vi, lo) = verts
            .iter()
            .enumerate()
            .map(|(i, v)| (i, f.normal.dot(v)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        offer(f.offset - lo, f.normal, WidthFeatures::FaceVertex { face: fi, vertex: vi });
    }

    let edges = k.edges();
    for i in 0..edges.len() {
        let (a1, b1) = k.edge_points(edges[i]);
        let d1 = b1 - a1;
        for j in i + 1..edges.len() {
            let (a2, b2) = k.edge_points(edges[j]);
            let d2 = b2 - a2;
            let c = d1.cross(&d2);
            if c.norm() <= 1e-12 * d1.norm() * d2.norm() {
                continue;
            }
            let mut u = c.normalize();
            if u.dot(&(a1 - a2)) < 0.0 {
                u = -u;
            }
            // Edge i must support from above and edge j from below.
            let (lo, hi) = k.extent(&u);
            if (hi - u.dot(&a1)).abs() <= tol && (u.dot(&a2) - lo).abs() <= tol {
                offer(hi - lo, u, WidthFeatures::EdgeEdge { first: i, second: j });
            }
        }
    }
    let best = best.ok_or_else(|| GeomError::DegenerateInput("polytope has no faces".into()))?;
    if best.width <= 1e-12 * scale {
        return Err(GeomError::DegenerateInput("flat body has zero width".into()));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_hull;

    #[test]
    fn cube_width() {
        let mut pts = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    pts.push(Point3::new(x, y, z));
                }
            }
        }
        let w = width3(&build_hull(&pts).unwrap()).unwrap();
        assert!((w.width - 1.0).abs() < 1e-15);
        assert!(matches!(w.features, WidthFeatures::FaceVertex { .. }));
    }

    #[test]
    fn regular_tetrahedron_width_is_edge_edge() {
        let s = 1.0 / (2.0 * 2f64.sqrt());
        let t = build_hull(&[
            Point3::new(s, s, s),
            Point3::new(s, -s, -s),
            Point3::new(-s, s, -s),
            Point3::new(-s, -s, s),
        ])
        .unwrap();
        let w = width3(&t).unwrap();
        assert!((w.width - 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(matches!(w.features, WidthFeatures::EdgeEdge { .. }));
        assert!((t.breadth(&w.direction) - w.width).abs() < 1e-12);
    }
}
