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

use nalgebra::{Isometry3, Matrix3, Rotation3, Translation3, UnitQuaternion};
use serde::{Deserialize, Serialize};

use crate::convex::Point3;
use crate::error::{GeomError, Result};
use crate::optim::tangent_basis;

/// Circle in space: center, diameter and unit normal of its plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircleJson")]
pub struct Circle3 {
    pub center: Point3,
    pub diameter: f64,
    pub normal: Point3,
}

#[derive(Deserialize)]
struct CircleJson {
    center: [f64; 3],
    diameter: f64,
    normal: [f64; 3],
}

impl TryFrom<CircleJson> for Circle3 {
    type Error = GeomError;
    fn try_from(j: CircleJson) -> Result<Self> {
        if j.center.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::InvalidInput("circle center must be finite".into()));
        }
        Circle3::new(j.center.into(), j.diameter, j.normal.into())
    }
}

impl Circle3 {
    pub fn new(center: Point3, diameter: f64, normal: Point3) -> Result<Self> {
        if !(diameter > 0.0) || !diameter.is_finite() {
            return Err(GeomError::InvalidInput(format!("circle diameter {diameter} must be positive")));
        }
        let len = normal.norm();
        if !(len > 0.0) {
            return Err(GeomError::InvalidInput("circle normal is zero".into()));
        }
        Ok(Self { center, diameter, normal: normal / len })
    }

    /// Horizontal circle (normal `+z`).
    pub fn horizontal(center: Point3, diameter: f64) -> Self {
        Self { center, diameter, normal: Point3::z() }
    }

    pub fn radius(&self) -> f64 {
        0.5 * self.diameter
    }

    /// In-plane orthonormal basis `(e1, e2)` with `e1 × e2 = normal`.
    pub fn basis(&self) -> (Point3, Point3) {
        tangent_basis(&self.normal)
    }

    pub fn point_at(&self, angle: f64) -> Point3 {
        let (e1, e2) = self.basis();
        self.center + (e1 * angle.cos() + e2 * angle.sin()) * self.radius()
    }

    /// Rigid motion taking the circle to the origin with normal `+z`.
    pub fn to_frame(&self) -> Isometry3<f64> {
        let (e1, e2) = self.basis();
        let m = Matrix3::from_rows(&[e1.transpose(), e2.transpose(), self.normal.transpose()]);
        let rot = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(m));
        let t = -(rot * self.center);
        Isometry3::from_parts(Translation3::from(t), rot)
    }

    /// The same circle with its normal reversed.
    pub fn flipped(&self) -> Self {
        Self { normal: -self.normal, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_maps_circle_to_origin() {
        let c = Circle3::new(Point3::new(1.0, 2.0, 3.0), 2.0, Point3::new(1.0, 1.0, 0.3)).unwrap();
        let f = c.to_frame();
        let o = f.transform_point(&c.center.into());
        assert!(o.coords.norm() < 1e-14);
        for k in 0..8 {
            let p = f.transform_point(&c.point_at(k as f64).into());
            assert!(p.z.abs() < 1e-14);
            assert!((p.coords.norm() - 1.0).abs() < 1e-14);
        }
        assert!((f.rotation * c.normal - Point3::z()).norm() < 1e-14);
    }

    #[test]
    fn json_round_trip_normalizes() {
        let c: Circle3 = serde_json::from_str(r#"{"center":[0,0,1],"diameter":2,"normal":[0,0,3]}"#).unwrap();
        assert_eq!(c.normal, Point3::z());
        let back = serde_json::to_string(&c).unwrap();
        assert_eq!(back, r#"{"center":[0.0,0.0,1.0],"diameter":2.0,"normal":[0.0,0.0,1.0]}"#);
        assert!(serde_json::from_str::<Circle3>(r#"{"center":[0,0,1],"diameter":-2,"normal":[0,0,1]}"#).is_err());
    }

    #[test]
    fn rejects_bad_diameter() {
        assert!(Circle3::new(Point3::zeros(), 0.0, Point3::z()).is_err());
        assert!(Circle3::new(Point3::zeros(), 1.0, Point3::zeros()).is_err());
    }
}
