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

//! Three-dimensional convex polytopes.

mod cylinder;
mod hull;
mod polytope;
mod width;

pub use cylinder::{min_cylinder, CylinderConfig, CylinderResult};
pub use hull::build_hull;
pub use polytope::{
    Face, HalfSpace, Location, PlaneFrame, Point3, Polytope3, Slice, SliceKind,
};
pub use width::{width3, WidthFeatures, WidthResult};

/// Distance between segments `[p1, q1]` and `[p2, q2]` with the closest points.
pub fn segment_distance(p1: &Point3, q1: &Point3, p2: &Point3, q2: &Point3) -> (f64, Point3, Point3) {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let f = d2.dot(&r);
    let (s, t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return ((p1 - p2).norm(), *p1, *p2);
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(&r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 1e-14 * a * e { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    let c1 = p1 + d1 * s;
    let c2 = p2 + d2 * t;
    ((c1 - c2).norm(), c1, c2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skew_and_parallel_segments() {
        let (d, _, _) = segment_distance(
            &Point3::new(-1.0, 0.0, 1.0),
            &Point3::new(1.0, 0.0, 1.0),
            &Point3::new(0.0, -1.0, 0.0),
            &Point3::new(0.0, 1.0, 0.0),
        );
        assert!((d - 1.0).abs() < 1e-15);
        let (d, _, _) = segment_distance(
            &Point3::new(0.0, 0.0, 0.0),
            &Point3::new(1.0, 0.0, 0.0),
            &Point3::new(2.0, 1.0, 0.0),
            &Point3::new(3.0, 1.0, 0.0),
        );
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
    }
}
