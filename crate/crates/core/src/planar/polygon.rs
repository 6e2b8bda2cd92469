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

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::tol::TAU_GEOM;

pub type Point2 = Vector2<f64>;

#[inline]
pub(crate) fn cross2(a: &Point2, b: &Point2) -> f64 {
    a.x * b.y - a.y * b.x
}

#[inline]
fn orient(o: &Point2, a: &Point2, b: &Point2) -> f64 {
    cross2(&(a - o), &(b - o))
}

/// Convex polygon with counterclockwise vertices and no repeated or
/// collinear vertices.
///
/// Degenerate sets are allowed: zero vertices (empty), one (point) or two
/// (segment). Use [`Polygon2::is_degenerate`] to test for them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon2 {
    vertices: Vec<Point2>,
}

impl Polygon2 {
    /// Convex hull of a point cloud (Andrew's monotone chain). Collinear and
    /// duplicate points are dropped with a scale-relative tolerance.
    pub fn hull(points: &[Point2]) -> Self {
        let mut pts: Vec<Point2> = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        let scale = pts
            .iter()
            .fold(0.0_f64, |m, p| m.max(p.x.abs()).max(p.y.abs()))
            .max(1.0);
        let dup = TAU_GEOM * 1e-3 * scale;
        pts.dedup_by(|a, b| (*a - *b).norm() <= dup);
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let eps = 1e-14 * scale * scale;
        let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
        for p in &pts {
            while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= eps {
                lower.pop();
            }
            lower.push(*p);
        }
        let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
        for p in pts.iter().rev() {
            while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= eps {
                upper.pop();
            }
            upper.push(*p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() == 2 && (lower[0] - lower[1]).norm() <= dup {
            lower.pop();
        }
        Self { vertices: lower }
    }

    /// Wraps vertices already known to be a convex counterclockwise loop.
    pub fn from_ccw_unchecked(vertices: Vec<Point2>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True for points and segments (and the empty set).
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Checks counterclockwise convexity within `tol`.
    pub fn is_convex(&self, tol: f64) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return true;
        }
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = self.vertices[(i + 2) % n];
            orient(&a, &b, &c) >= -tol
        })
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        0.5 * (0..n)
            .map(|i| cross2(&self.vertices[i], &self.vertices[(i + 1) % n]))
            .sum::<f64>()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// `max_v u·v`.
    pub fn support(&self, u: &Point2) -> f64 {
        self.vertices.iter().map(|v| u.dot(v)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Extent along the unit direction `u`.
    pub fn breadth(&self, u: &Point2) -> f64 {
        self.support(u) + self.support(&-u)
    }

    /// Euclidean distance from `p` to the polygon (zero inside).
    pub fn distance_to(&self, p: &Point2) -> f64 {
        match self.vertices.len() {
            0 => f64::INFINITY,
            1 => (p - self.vertices[0]).norm(),
            2 => segment_distance(p, &self.vertices[0], &self.vertices[1]),
            _ => {
                if self.edges().all(|(a, b)| orient(&a, &b, p) >= 0.0) {
                    return 0.0;
                }
                self.edges()
                    .map(|(a, b)| segment_distance(p, &a, &b))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Clips against the half-plane `n·p ≤ c`.
    pub fn clip(&self, n: &Point2, c: f64) -> Polygon2 {
        let k = self.vertices.len();
        if k == 0 {
            return self.clone();
        }
        let mut out = Vec::with_capacity(k + 1);
        for i in 0..k {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % k];
            let da = n.dot(&a) - c;
            let db = n.dot(&b) - c;
            if da <= 0.0 {
                out.push(a);
            }
            if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
                let t = da / (da - db);
                out.push(a + (b - a) * t);
            }
        }
        Polygon2::hull(&out)
    }

    /// Applies `f` to every vertex and re-hulls.
    pub fn map(&self, f: impl Fn(&Point2) -> Point2) -> Polygon2 {
        let pts: Vec<Point2> = self.vertices.iter().map(f).collect();
        Polygon2::hull(&pts)
    }
}

fn segment_distance(p: &Point2, a: &Point2, b: &Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Planar width with its attaining direction (unit normal of the narrowest strip).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Width2 {
    pub width: f64,
    pub direction: Point2,
    /// Set for points and segments, whose width is reported as zero.
    pub degenerate: bool,
}

/// Minimum over edges of the largest vertex distance to the edge line.
pub fn width2(p: &Polygon2) -> Width2 {
    let v = p.vertices();
    match v.len() {
        0 | 1 => {
            return Width2 { width: 0.0, direction: Point2::new(1.0, 0.0), degenerate: true };
        }
        2 => {
            let d = v[1] - v[0];
            let n = Point2::new(-d.y, d.x).normalize();
            return Width2 { width: 0.0, direction: n, degenerate: true };
        }
        _ => {}
    }
    let mut best = Width2 { width: f64::INFINITY, direction: Point2::new(1.0, 0.0), degenerate: false };
    for (a, b) in p.edges() {
        let d = b - a;
        let n = Point2::new(d.y, -d.x).normalize();
        let far = v.iter().map(|q| (a - q).dot(&n)).fold(0.0_f64, f64::max);
        if far < best.width {
            best.width = far;
            best.direction = n;
        }
    }
    best
}

/// Symmetric Hausdorff distance between two convex polygons.
///
/// For convex sets the directed distance is attained at a vertex, so only
/// vertex-to-polygon distances are needed.
pub fn hausdorff_distance(p: &Polygon2, q: &Polygon2) -> f64 {
    let directed = |a: &Polygon2, b: &Polygon2| {
        a.vertices().iter().map(|v| b.distance_to(v)).fold(0.0_f64, f64::max)
    };
    directed(p, q).max(directed(q, p))
}
