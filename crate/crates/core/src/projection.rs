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

//! Vertical projections of the two halves of a body cut by a circle plane,
//! and the iceberg profile built from their horizontal widths.

use std::f64::consts::PI;

use nalgebra::{Isometry3, Matrix3, Rotation3, Translation3, UnitQuaternion};
use serde::{Deserialize, Serialize};

use crate::convex::{HalfSpace, PlaneFrame, Point3, Polytope3};
use crate::error::Result;
use crate::optim::golden_min;
use crate::planar::{horizontal_width, Point2, Polygon2};
use crate::tol::TAU_GEOM;

/// Margins closer to zero than this are not classified.
pub const MARGIN_TOL: f64 = 1e-7;

/// Projections of the upper part `A` and lower part `B` into the vertical
/// plane of direction `θ`, in coordinates `s = x·cosθ + y·sinθ`, `t = z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectedPair {
    pub theta: f64,
    pub a: Polygon2,
    pub b: Polygon2,
}

impl ProjectedPair {
    pub fn wh_a(&self) -> f64 {
        horizontal_width(&self.a).0
    }

    pub fn wh_b(&self) -> f64 {
        horizontal_width(&self.b).0
    }

    /// Projection of the whole body.
    pub fn union(&self) -> Polygon2 {
        let pts: Vec<Point2> = self.a.vertices().iter().chain(self.b.vertices()).copied().collect();
        Polygon2::hull(&pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// `w_h(A_θ) < w_h(B_θ)` for every sampled `θ`.
    AsGiven,
    /// `w_h(B_θ) < w_h(A_θ)` for every sampled `θ`.
    Flipped,
    /// Both strict signs occur.
    Neither,
    /// Some margin lies within [`MARGIN_TOL`] of zero.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IcebergProfile {
    pub thetas: Vec<f64>,
    pub wh_a: Vec<f64>,
    pub wh_b: Vec<f64>,
    /// Refined minimum of `w_h(B_θ) − w_h(A_θ)`.
    pub margin: f64,
    pub theta_min: f64,
    /// Refined minimum of `w_h(A_θ) − w_h(B_θ)`.
    pub flipped_margin: f64,
    pub theta_flipped_min: f64,
    pub orientation: Orientation,
}

/// The two halves of a body on either side of a plane, expressed in the
/// frame where the plane is `z = 0` with its normal pointing up.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitBody {
    pub upper: Polytope3,
    pub lower: Polytope3,
}

/// Rigid motion taking the boundary of `plane` to `z = 0` with the plane
/// normal mapped to `+z`; horizontal planes keep their `x` and `y` axes.
pub fn plane_frame_iso(plane: &HalfSpace) -> Isometry3<f64> {
    let f = PlaneFrame::of_plane(plane);
    let m = Matrix3::from_rows(&[f.u.transpose(), f.v.transpose(), f.normal.transpose()]);
    let rot = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(m));
    Isometry3::from_parts(Translation3::from(-(rot * f.origin)), rot)
}

/// Cuts `k` by the boundary of `plane`; the upper part lies on the side the
/// normal points to.
pub fn split(k: &Polytope3, plane: &HalfSpace) -> Result<SplitBody> {
    let local = k.transformed(&plane_frame_iso(plane));
    let upper = local.clip(&HalfSpace::new(-Point3::z(), 0.0), TAU_GEOM)?;
    let lower = local.clip(&HalfSpace::new(Point3::z(), 0.0), TAU_GEOM)?;
    Ok(SplitBody { upper, lower })
}

fn project(k: &Polytope3, theta: f64) -> Polygon2 {
    let (c, s) = (theta.cos(), theta.sin());
    let pts: Vec<Point2> = k.vertices().iter().map(|v| Point2::new(v.x * c + v.y * s, v.z)).collect();
    Polygon2::hull(&pts)
}

impl SplitBody {
    pub fn project(&self, theta: f64) -> ProjectedPair {
        ProjectedPair { theta, a: project(&self.upper, theta), b: project(&self.lower, theta) }
    }

    /// `w_h(B_θ) − w_h(A_θ)`.
    pub fn margin(&self, theta: f64) -> f64 {
        let p = self.project(theta);
        p.wh_b() - p.wh_a()
    }
}

/// Splits `k` by `plane` and projects both halves in direction `θ`.
pub fn split_project(k: &Polytope3, plane: &HalfSpace, theta: f64) -> Result<ProjectedPair> {
    Ok(split(k, plane)?.project(theta))
}

/// Samples `w_h(A_θ)` and `w_h(B_θ)` on a uniform grid of `[0, π)` and refines
/// the extreme margins by golden-section search between neighbouring samples.
pub fn iceberg_profile(k: &Polytope3, plane: &HalfSpace, n_samples: usize) -> Result<IcebergProfile> {
    let body = split(k, plane)?;
    let n = n_samples.max(4);
    let thetas: Vec<f64> = (0..n).map(|i| PI * i as f64 / n as f64).collect();
    let (mut wh_a, mut wh_b) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for &t in &thetas {
        let p = body.project(t);
        wh_a.push(p.wh_a());
        wh_b.push(p.wh_b());
    }
    let margins: Vec<f64> = wh_a.iter().zip(&wh_b).map(|(a, b)| b - a).collect();
    let dt = PI / n as f64;
    let refine = |sign: f64| {
        let i = (0..n).min_by(|&i, &j| (sign * margins[i]).total_cmp(&(sign * margins[j]))).unwrap_or(0);
        let t0 = thetas[i];
        let (t, v) = golden_min(|t| sign * body.margin(t), t0 - dt, t0 + dt, 1e-10);
        if v < sign * margins[i] {
            (t.rem_euclid(PI), v)
        } else {
            (t0, sign * margins[i])
        }
    };
    let (theta_min, margin) = refine(1.0);
    let (theta_flipped_min, flipped_margin) = refine(-1.0);
    let orientation = if margin > MARGIN_TOL {
        Orientation::AsGiven
    } else if flipped_margin > MARGIN_TOL {
        Orientation::Flipped
    } else if margin < -MARGIN_TOL && flipped_margin < -MARGIN_TOL {
        Orientation::Neither
    } else {
        Orientation::Indeterminate
    };
    Ok(IcebergProfile { thetas, wh_a, wh_b, margin, theta_min, flipped_margin, theta_flipped_min, orientation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_hull;

    fn cube(h: f64) -> Polytope3 {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Point3::new(
                if i & 1 == 0 { -h } else { h },
                if i & 2 == 0 { -h } else { h },
                if i & 4 == 0 { -h } else { h },
            ));
        }
        build_hull(&pts).unwrap()
    }

    #[test]
    fn cube_halves_have_equal_widths() {
        let p = split_project(&cube(1.0), &HalfSpace::new(Point3::z(), 0.0), 0.0).unwrap();
        assert!((p.wh_a() - 2.0).abs() < 1e-12);
        assert!((p.wh_b() - 2.0).abs() < 1e-12);
        assert!(p.a.vertices().iter().all(|v| v.y >= -1e-12));
        assert!(p.b.vertices().iter().all(|v| v.y <= 1e-12));
        let prof = iceberg_profile(&cube(1.0), &HalfSpace::new(Point3::z(), 0.0), 16).unwrap();
        assert_eq!(prof.orientation, Orientation::Indeterminate);
    }

    #[test]
    fn tilted_plane_frame() {
        let plane = HalfSpace::new(Point3::new(0.0, 1.0, 1.0), 0.5);
        let iso = plane_frame_iso(&plane);
        let p = plane.normal * plane.offset + Point3::new(1.0, 0.0, 0.0);
        assert!(iso.transform_point(&p.into()).z.abs() < 1e-14);
        assert!((iso.rotation * plane.normal - Point3::z()).norm() < 1e-14);
    }

    #[test]
    fn truncated_pyramid_is_flipped_or_as_given() {
        let mut pts = Vec::new();
        for (r, z) in [(2.0, -1.0), (1.0, 1.0)] {
            for k in 0..4 {
                let t = PI / 2.0 * k as f64;
                pts.push(Point3::new(r * t.cos(), r * t.sin(), z));
            }
        }
        let k = build_hull(&pts).unwrap();
        let prof = iceberg_profile(&k, &HalfSpace::new(Point3::z(), 0.0), 36).unwrap();
        assert_eq!(prof.orientation, Orientation::AsGiven);
        let flipped = iceberg_profile(&k, &HalfSpace::new(-Point3::z(), 0.0), 36).unwrap();
        assert_eq!(flipped.orientation, Orientation::Flipped);
        assert!((prof.margin - flipped.flipped_margin).abs() < 1e-6);
    }
}
