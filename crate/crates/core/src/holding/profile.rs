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

use super::Circle3;
use crate::convex::{segment_distance, HalfSpace, Point3, Polytope3};
use crate::planar::{min_enclosing_circle, Circle2};
use crate::tol::{TAU_GEOM, TAU_OPT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Above,
    Below,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceCircum {
    /// Signed distance of the slice plane from the circle plane.
    pub height: f64,
    pub center: Point3,
    pub diameter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceCircumProfile {
    pub side: Side,
    pub records: Vec<SliceCircum>,
}

impl SliceCircumProfile {
    pub fn max_diameter(&self) -> Option<&SliceCircum> {
        self.records.iter().max_by(|a, b| a.diameter.total_cmp(&b.diameter))
    }
}

/// Minimal enclosing circle of the slice of `k` by the plane `n·p = offset`,
/// with its center mapped back into space.
pub fn slice_circumcircle(k: &Polytope3, normal: &Point3, offset: f64) -> Option<(Point3, Circle2)> {
    let plane = HalfSpace::new(*normal, offset);
    let slice = k.slice(&plane, TAU_GEOM).ok()?;
    let mec = min_enclosing_circle(slice.polygon.vertices());
    Some((slice.frame.to_space(&mec.center), mec))
}

/// Circumcircles of `n_heights` equally spaced slices parallel to the circle
/// plane on one side of it, from the circle plane to the far end of `k`.
pub fn slice_circum_profile(k: &Polytope3, c: &Circle3, side: Side, n_heights: usize) -> SliceCircumProfile {
    let n = c.normal;
    let h0 = n.dot(&c.center);
    let (lo, hi) = k.extent(&n);
    let far = match side {
        Side::Above => hi - h0,
        Side::Below => lo - h0,
    };
    let mut records = Vec::new();
    let count = n_heights.max(2);
    if (side == Side::Above && far > 0.0) || (side == Side::Below && far < 0.0) {
        for i in 0..count {
            let height = far * i as f64 / (count - 1) as f64;
            if let Some((center, mec)) = slice_circumcircle(k, &n, h0 + height) {
                records.push(SliceCircum { height, center, diameter: mec.diameter() });
            }
        }
    }
    SliceCircumProfile { side, records }
}

/// `(blocked_above, blocked_below)`: a side is blocked when some slice on it
/// has a circumcircle wider than the circle by more than `tol`.
///
/// The circumdiameter is convex between consecutive vertex heights, so its
/// maximum over a side is attained at a vertex height or at the circle plane;
/// those heights are evaluated together with `n_heights` uniform ones.
pub fn translation_block_certificate(k: &Polytope3, c: &Circle3, n_heights: usize, tol: f64) -> (bool, bool) {
    let n = c.normal;
    let h0 = n.dot(&c.center);
    let side_max = |side: Side| {
        let sampled = slice_circum_profile(k, c, side, n_heights).max_diameter().map_or(0.0, |r| r.diameter);
        k.vertices()
            .iter()
            .map(|v| n.dot(v) - h0)
            .filter(|&t| match side {
                Side::Above => t > 0.0,
                Side::Below => t < 0.0,
            })
            .filter_map(|t| slice_circumcircle(k, &n, h0 + t).map(|(_, m)| m.diameter()))
            .fold(sampled, f64::max)
    };
    (side_max(Side::Above) > c.diameter + tol, side_max(Side::Below) > c.diameter + tol)
}

/// Default blocking test with 200 heights per side and tolerance [`TAU_OPT`].
pub fn blocked_sides(k: &Polytope3, c: &Circle3) -> (bool, bool) {
    translation_block_certificate(k, c, 200, TAU_OPT)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeBound {
    pub distance: f64,
    pub edges: [(usize, usize); 2],
    pub points: [Point3; 2],
}

/// Smallest distance between two edges without a common vertex. A circle
/// holding a polyhedron meets two such edges, so this bounds `d` from below.
pub fn nonintersecting_edge_bound(k: &Polytope3) -> Option<EdgeBound> {
    let edges = k.edges();
    let mut best: Option<EdgeBound> = None;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                continue;
            }
            let (p1, q1) = k.edge_points(e);
            let (p2, q2) = k.edge_points(f);
            let (d, a, b) = segment_distance(&p1, &q1, &p2, &q2);
            if best.is_none_or(|bb| d < bb.distance) {
                best = Some(EdgeBound { distance: d, edges: [e, f], points: [a, b] });
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_hull;
    use crate::families::{flat_tetrahedron, octahedron_iceberg, wd_tetrahedron};

    fn unit_cube() -> Polytope3 {
        let pts: Vec<Point3> =
            (0..8).map(|i| Point3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64)).collect();
        build_hull(&pts).unwrap()
    }

    #[test]
    fn flat_tetrahedron_profiles() {
        let f = flat_tetrahedron(0.2).unwrap();
        let c = f.circle.unwrap();
        let below = slice_circum_profile(&f.body, &c, Side::Below, 50);
        let last = below.records.last().unwrap();
        assert!((last.diameter - 0.4).abs() < 1e-9);
        let above = slice_circum_profile(&f.body, &c, Side::Above, 50);
        assert!((above.records.last().unwrap().diameter - 2.0).abs() < 1e-9);
        let heights: Vec<f64> = above.records.iter().map(|r| r.height).collect();
        assert!(heights.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(blocked_sides(&f.body, &c), (true, true));
    }

    #[test]
    fn cube_profile_is_constant() {
        let k = unit_cube();
        let c = Circle3::horizontal(Point3::new(0.5, 0.5, 0.5), 10.0);
        let p = slice_circum_profile(&k, &c, Side::Above, 11);
        assert!(p.records.iter().all(|r| (r.diameter - 2f64.sqrt()).abs() < 1e-12));
        assert_eq!(blocked_sides(&k, &c), (false, false));
    }

    #[test]
    fn octahedron_is_blocked() {
        let o = octahedron_iceberg(1.38, 5.0).unwrap();
        assert_eq!(blocked_sides(&o.body, &o.circle.unwrap()), (true, true));
    }

    #[test]
    fn edge_bounds() {
        let f = flat_tetrahedron(0.2).unwrap();
        let b = nonintersecting_edge_bound(&f.body).unwrap();
        assert!((b.distance - 2.0 * 0.2f64.atan().sin()).abs() < 1e-12);
        let w = wd_tetrahedron(2.0, 2.0, 1.0).unwrap();
        assert!((nonintersecting_edge_bound(&w.body).unwrap().distance - 1.0).abs() < 1e-12);
        assert!((nonintersecting_edge_bound(&unit_cube()).unwrap().distance - 1.0).abs() < 1e-12);
    }
}
