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

use std::collections::BTreeSet;

use nalgebra::{Isometry3, Vector3};
use serde::{Deserialize, Serialize};

use super::hull::build_hull;
use crate::error::{GeomError, Result};
use crate::optim::tangent_basis;
use crate::planar::{Point2, Polygon2};

pub type Point3 = Vector3<f64>;

/// Closed half-space `{p : normal·p ≤ offset}`; its boundary doubles as a plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: Point3,
    pub offset: f64,
}

impl HalfSpace {
    /// Normalizes `normal` (and scales `offset` accordingly).
    pub fn new(normal: Point3, offset: f64) -> Self {
        let len = normal.norm();
        Self { normal: normal / len, offset: offset / len }
    }

    /// Half-space with unit `normal` whose boundary passes through `point`.
    pub fn through(normal: Point3, point: &Point3) -> Self {
        let n = normal.normalize();
        Self { normal: n, offset: n.dot(point) }
    }

    pub fn complement(&self) -> Self {
        Self { normal: -self.normal, offset: -self.offset }
    }

    pub fn signed_distance(&self, p: &Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Polygonal face: outward unit normal, offset, and a counterclockwise vertex
/// loop as seen from outside.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub normal: Point3,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Orthonormal frame of a plane: `origin + s·u + t·v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneFrame {
    pub origin: Point3,
    pub u: Point3,
    pub v: Point3,
    pub normal: Point3,
}

impl PlaneFrame {
    /// Frame of the boundary plane of `plane`. For a plane with normal `+z`
    /// the in-plane coordinates are exactly `(x, y)`.
    pub fn of_plane(plane: &HalfSpace) -> Self {
        let n = plane.normal;
        let (u, v) = tangent_basis(&n);
        Self { origin: n * plane.offset, u, v, normal: n }
    }

    pub fn to_plane(&self, p: &Point3) -> Point2 {
        let d = p - self.origin;
        Point2::new(d.dot(&self.u), d.dot(&self.v))
    }

    pub fn to_space(&self, q: &Point2) -> Point3 {
        self.origin + self.u * q.x + self.v * q.y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SliceKind {
    Polygon,
    Segment,
    Point,
}

/// Planar cross-section with the frame that embeds it back into space.
#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    pub frame: PlaneFrame,
    pub polygon: Polygon2,
    pub kind: SliceKind,
}

/// Convex polytope in vertex/face form with derived edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolytopeJson", into = "PolytopeJson")]
pub struct Polytope3 {
    vertices: Vec<Point3>,
    faces: Vec<Face>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    vertices: Vec<[f64; 3]>,
}

impl TryFrom<PolytopeJson> for Polytope3 {
    type Error = GeomError;

    fn try_from(j: PolytopeJson) -> Result<Self> {
        let pts: Vec<Point3> = j.vertices.iter().map(|v| Point3::new(v[0], v[1], v[2])).collect();
        build_hull(&pts)
    }
}

impl From<Polytope3> for PolytopeJson {
    fn from(p: Polytope3) -> Self {
        PolytopeJson { vertices: p.vertices.iter().map(|v| [v.x, v.y, v.z]).collect() }
    }
}

impl Polytope3 {
    pub(crate) fn from_parts(vertices: Vec<Point3>, faces: Vec<Face>) -> Self {
        let mut set = BTreeSet::new();
        for f in &faces {
            let n = f.vertices.len();
            for i in 0..n {
                let a = f.vertices[i];
                let b = f.vertices[(i + 1) % n];
                set.insert((a.min(b), a.max(b)));
            }
        }
        Self { vertices, faces, edges: set.into_iter().collect() }
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_points(&self, e: (usize, usize)) -> (Point3, Point3) {
        (self.vertices[e.0], self.vertices[e.1])
    }

    /// Average of the vertices (an interior point).
    pub fn vertex_centroid(&self) -> Point3 {
        self.vertices.iter().sum::<Point3>() / self.vertices.len() as f64
    }

    /// Largest vertex distance from the vertex centroid.
    pub fn radius(&self) -> f64 {
        let c = self.vertex_centroid();
        self.vertices.iter().map(|v| (v - c).norm()).fold(0.0, f64::max)
    }

    /// `max_v u·v`.
    pub fn support(&self, u: &Point3) -> f64 {
        self.vertices.iter().map(|v| u.dot(v)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Distance between the two support planes orthogonal to the unit vector `u`.
    pub fn breadth(&self, u: &Point3) -> f64 {
        let (lo, hi) = self.extent(u);
        hi - lo
    }

    /// `(min_v u·v, max_v u·v)`.
    pub fn extent(&self, u: &Point3) -> (f64, f64) {
        self.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let x = u.dot(v);
            (lo.min(x), hi.max(x))
        })
    }

    pub fn face_halfspaces(&self) -> impl Iterator<Item = HalfSpace> + '_ {
        self.faces.iter().map(|f| HalfSpace { normal: f.normal, offset: f.offset })
    }

    fn face_area(&self, f: &Face) -> f64 {
        let n = f.vertices.len();
        let mut acc = Point3::zeros();
        for i in 0..n {
            acc += self.vertices[f.vertices[i]].cross(&self.vertices[f.vertices[(i + 1) % n]]);
        }
        0.5 * f.normal.dot(&acc)
    }

    pub fn surface_area(&self) -> f64 {
        self.faces.iter().map(|f| self.face_area(f)).sum()
    }

    pub fn volume(&self) -> f64 {
        let c = self.vertex_centroid();
        self.faces
            .iter()
            .map(|f| (f.offset - f.normal.dot(&c)) * self.face_area(f) / 3.0)
            .sum()
    }

    pub fn point_location(&self, p: &Point3, tol: f64) -> Location {
        let m = self
            .face_halfspaces()
            .map(|h| h.signed_distance(p))
            .fold(f64::NEG_INFINITY, f64::max);
        if m < -tol {
            Location::Interior
        } else if m <= tol {
            Location::Boundary
        } else {
            Location::Exterior
        }
    }

    /// `self ∩ hs`. Returns `self` unchanged when it already lies in `hs`.
    pub fn clip(&self, hs: &HalfSpace, tol: f64) -> Result<Polytope3> {
        let dist: Vec<f64> = self.vertices.iter().map(|v| hs.signed_distance(v)).collect();
        if dist.iter().all(|&d| d <= tol) {
            return Ok(self.clone());
        }
        if dist.iter().all(|&d| d >= -tol) {
            return Err(GeomError::EmptyResult("half-space misses the interior".into()));
        }
        let mut pts: Vec<Point3> = self
            .vertices
            .iter()
            .zip(&dist)
            .filter(|(_, &d)| d <= tol)
            .map(|(v, _)| *v)
            .collect();
        for &(a, b) in &self.edges {
            let (da, db) = (dist[a], dist[b]);
            if (da < -tol && db > tol) || (da > tol && db < -tol) {
                let t = da / (da - db);
                pts.push(self.vertices[a] + (self.vertices[b] - self.vertices[a]) * t);
            }
        }
        build_hull(&pts).map_err(|e| GeomError::EmptyResult(format!("clipped body is flat: {e}")))
    }

    /// Cross-section by the boundary plane of `plane`.
    pub fn slice(&self, plane: &HalfSpace, tol: f64) -> Result<Slice> {
        let frame = PlaneFrame::of_plane(plane);
        let dist: Vec<f64> = self.vertices.iter().map(|v| plane.signed_distance(v)).collect();
        let mut pts: Vec<Point2> = Vec::new();
        for (v, &d) in self.vertices.iter().zip(&dist) {
            if d.abs() <= tol {
                pts.push(frame.to_plane(&(v - plane.normal * d)));
            }
        }
        for &(a, b) in &self.edges {
            let (da, db) = (dist[a], dist[b]);
            if (da < -tol && db > tol) || (da > tol && db < -tol) {
                let t = da / (da - db);
                let p = self.vertices[a] + (self.vertices[b] - self.vertices[a]) * t;
                pts.push(frame.to_plane(&p));
            }
        }
        if pts.is_empty() {
            return Err(GeomError::EmptyResult("plane misses the body".into()));
        }
        let polygon = Polygon2::hull(&pts);
        let kind = match polygon.len() {
            1 => SliceKind::Point,
            2 => SliceKind::Segment,
            _ => SliceKind::Polygon,
        };
        Ok(Slice { frame, polygon, kind })
    }

    /// Image under a rigid motion; faces are carried along, not recomputed.
    pub fn transformed(&self, iso: &Isometry3<f64>) -> Polytope3 {
        let vertices: Vec<Point3> = self.vertices.iter().map(|v| iso.transform_point(&(*v).into()).coords).collect();
        let faces = self
            .faces
            .iter()
            .map(|f| {
                let normal = iso.rotation * f.normal;
                Face { normal, offset: f.offset + normal.dot(&iso.translation.vector), vertices: f.vertices.clone() }
            })
            .collect();
        Polytope3 { vertices, faces, edges: self.edges.clone() }
    }

    /// Faces adjacent to each edge, in the order of [`Polytope3::edges`].
    pub fn edge_faces(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.edges.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            let n = f.vertices.len();
            for i in 0..n {
                let a = f.vertices[i];
                let b = f.vertices[(i + 1) % n];
                if let Ok(k) = self.edges.binary_search(&(a.min(b), a.max(b))) {
                    out[k].push(fi);
                }
            }
        }
        out
    }

    /// Lists violated structural invariants (empty when the polytope is sound).
    pub fn validate(&self, tol: f64) -> Vec<String> {
        let mut issues = Vec::new();
        let (v, e, f) = (self.vertices.len() as i64, self.edges.len() as i64, self.faces.len() as i64);
        if v - e + f != 2 {
            issues.push(format!("Euler characteristic {} != 2", v - e + f));
        }
        for (fi, face) in self.faces.iter().enumerate() {
            if (face.normal.norm() - 1.0).abs() > tol {
                issues.push(format!("face {fi} normal not unit"));
            }
            for (vi, p) in self.vertices.iter().enumerate() {
                let d = face.normal.dot(p) - face.offset;
                if d > tol {
                    issues.push(format!("vertex {vi} outside face {fi} by {d:e}"));
                }
                if face.vertices.contains(&vi) && d.abs() > tol {
                    issues.push(format!("vertex {vi} off the plane of face {fi} by {d:e}"));
                }
            }
            let n = face.vertices.len();
            for i in 0..n {
                let a = self.vertices[face.vertices[i]];
                let b = self.vertices[face.vertices[(i + 1) % n]];
                let c = self.vertices[face.vertices[(i + 2) % n]];
                if (b - a).cross(&(c - b)).dot(&face.normal) <= 0.0 {
                    issues.push(format!("face {fi} not wound counterclockwise at corner {i}"));
                }
            }
        }
        for (k, fs) in self.edge_faces().iter().enumerate() {
            if fs.len() != 2 {
                issues.push(format!("edge {k} borders {} faces", fs.len()));
            }
        }
        issues
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cube(lo: f64, hi: f64) -> Polytope3 {
        let mut pts = Vec::new();
        for &x in &[lo, hi] {
            for &y in &[lo, hi] {
                for &z in &[lo, hi] {
                    pts.push(Point3::new(x, y, z));
                }
            }
        }
        build_hull(&pts).unwrap()
    }

    #[test]
    fn support_of_cube() {
        let c = cube(0.0, 1.0);
        assert_eq!(c.support(&Point3::x()), 1.0);
        assert_eq!(c.support(&-Point3::x()), 0.0);
        assert!((c.volume() - 1.0).abs() < 1e-14);
        assert!((c.surface_area() - 6.0).abs() < 1e-14);
    }

    #[test]
    fn point_location_of_cube() {
        let c = cube(0.0, 1.0);
        assert_eq!(c.point_location(&Point3::new(0.5, 0.5, 0.5), 1e-9), Location::Interior);
        assert_eq!(c.point_location(&Point3::new(0.0, 0.5, 0.5), 1e-9), Location::Boundary);
        assert_eq!(c.point_location(&Point3::new(2.0, 0.0, 0.0), 1e-9), Location::Exterior);
    }

    #[test]
    fn clip_cube_in_half() {
        let c = cube(0.0, 1.0);
        let half = c.clip(&HalfSpace::new(Point3::z(), 0.5), 1e-9).unwrap();
        assert_eq!(half.vertices().len(), 8);
        assert!((half.volume() - 0.5).abs() < 1e-14);
        assert!((half.support(&Point3::z()) - 0.5).abs() < 1e-15);
        let same = c.clip(&HalfSpace::new(Point3::z(), 3.0), 1e-9).unwrap();
        assert_eq!(same, c);
        assert!(c.clip(&HalfSpace::new(Point3::z(), -1.0), 1e-9).is_err());
    }

    #[test]
    fn slice_cube() {
        let c = cube(0.0, 1.0);
        let s = c.slice(&HalfSpace::new(Point3::z(), 0.5), 1e-9).unwrap();
        assert_eq!(s.kind, SliceKind::Polygon);
        assert!((s.polygon.area() - 1.0).abs() < 1e-14);
        // Horizontal frames use (x, y) as in-plane coordinates.
        assert!(s.polygon.vertices().iter().any(|p| (p - Point2::new(1.0, 1.0)).norm() < 1e-15));
        assert!(c.slice(&HalfSpace::new(Point3::z(), 2.0), 1e-9).is_err());
    }

    #[test]
    fn json_round_trip_recomputes_faces() {
        let c = cube(-1.0, 1.0);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with("{\"vertices\":[["));
        let back: Polytope3 = serde_json::from_str(&s).unwrap();
        assert_eq!(back.faces().len(), 6);
        assert!((back.volume() - 8.0).abs() < 1e-12);
    }
}
