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

//! Seeded random convex polygons for property checks.

use rand::Rng;

use super::polygon::{Point2, Polygon2};

/// Convex hull of `k ∈ [5, 30]` uniform points in the unit disk around `center`.
pub fn random_disk_polygon<R: Rng>(rng: &mut R, center: Point2) -> Polygon2 {
    loop {
        let k = rng.random_range(5..=30);
        let pts: Vec<Point2> = (0..k)
            .map(|_| {
                let r = rng.random::<f64>().sqrt();
                let a = rng.random_range(0.0..std::f64::consts::TAU);
                center + Point2::new(r * a.cos(), r * a.sin())
            })
            .collect();
        let p = Polygon2::hull(&pts);
        if p.len() >= 3 {
            return p;
        }
    }
}

/// Random disk polygon with vertices strictly on both sides of `t = 0`.
pub fn random_axis_crossing_polygon<R: Rng>(rng: &mut R) -> Polygon2 {
    loop {
        let c = Point2::new(rng.random_range(-2.0..2.0), rng.random_range(-0.6..0.6));
        let p = random_disk_polygon(rng, c);
        let v = p.vertices();
        if v.iter().any(|q| q.y > 1e-6) && v.iter().any(|q| q.y < -1e-6) {
            return p;
        }
    }
}
