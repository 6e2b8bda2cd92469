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

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::polygon::Point2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle2 {
    pub center: Point2,
    pub radius: f64,
}

impl Circle2 {
    pub fn new(center: Point2, radius: f64) -> Self {
        Self { center, radius }
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.radius
    }

    fn contains(&self, p: &Point2, slack: f64) -> bool {
        (p - self.center).norm() <= self.radius + slack
    }
}

/// Smallest circle enclosing `points` (Welzl's algorithm, iterative form).
///
/// The input is shuffled with a fixed seed so results are reproducible. The
/// returned radius is the exact maximum distance from the computed center to
/// the points, so every point lies inside up to rounding.
pub fn min_enclosing_circle(points: &[Point2]) -> Circle2 {
    if points.is_empty() {
        return Circle2::new(Point2::zeros(), 0.0);
    }
    // Work relative to the first point to keep magnitudes small.
    let origin = points[0];
    let mut pts: Vec<Point2> = points.iter().map(|p| p - origin).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c1c1e);
    pts.shuffle(&mut rng);
    let scale = pts.iter().map(|p| p.norm()).fold(0.0_f64, f64::max).max(1e-300);
    let slack = 1e-14 * scale;

    let mut c = Circle2::new(pts[0], 0.0);
    for i in 1..pts.len() {
        if c.contains(&pts[i], slack) {
            continue;
        }
        c = Circle2::new(pts[i], 0.0);
        for j in 0..i {
            if c.contains(&pts[j], slack) {
                continue;
            }
            c = diametral(&pts[i], &pts[j]);
            for k in 0..j {
                if c.contains(&pts[k], slack) {
                    continue;
                }
                c = circumcircle(&pts[i], &pts[j], &pts[k]).unwrap_or_else(|| {
                    // Collinear triple: the farthest pair spans the circle.
                    let cands = [
                        diametral(&pts[i], &pts[j]),
                        diametral(&pts[i], &pts[k]),
                        diametral(&pts[j], &pts[k]),
                    ];
                    cands.into_iter().max_by(|a, b| a.radius.total_cmp(&b.radius)).unwrap()
                });
            }
        }
    }
    let center = c.center + origin;
    let radius = points.iter().map(|p| (p - center).norm()).fold(0.0_f64, f64::max);
    Circle2::new(center, radius)
}

fn diametral(a: &Point2, b: &Point2) -> Circle2 {
    let c = (a + b) * 0.5;
    Circle2::new(c, (a - c).norm().max((b - c).norm()))
}

fn circumcircle(a: &Point2, b: &Point2, c: &Point2) -> Option<Circle2> {
    let ab = b - a;
    let ac = c - a;
    let d = 2.0 * (ab.x * ac.y - ab.y * ac.x);
    let scale = ab.norm_squared().max(ac.norm_squared());
    if d.abs() <= 1e-14 * scale {
        return None;
    }
    let b2 = ab.norm_squared();
    let c2 = ac.norm_squared();
    let ux = (ac.y * b2 - ab.y * c2) / d;
    let uy = (ab.x * c2 - ac.x * b2) / d;
    let center = a + Point2::new(ux, uy);
    let r = (a - center).norm().max((b - center).norm()).max((c - center).norm());
    Some(Circle2::new(center, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_tetrahedron_projection() {
        // Projection of the ε = 0.2 flat tetrahedron along x: ε² + c² = (1 − c)².
        let c = min_enclosing_circle(&[
            Point2::new(0.2, 0.0),
            Point2::new(-0.2, 0.0),
            Point2::new(0.0, 1.0),
        ]);
        assert!((c.center - Point2::new(0.0, 0.48)).norm() < 1e-12);
        assert!((c.radius - 0.52).abs() < 1e-12);
    }

    #[test]
    fn two_points() {
        let c = min_enclosing_circle(&[Point2::new(-1.0, 3.0), Point2::new(1.0, 3.0)]);
        assert!((c.radius - 1.0).abs() < 1e-15);
        assert!((c.center - Point2::new(0.0, 3.0)).norm() < 1e-15);
    }

    #[test]
    fn equilateral_triangle() {
        let a = 1.38_f64;
        let pts: Vec<Point2> = (0..3)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                Point2::new(a * t.cos(), a * t.sin())
            })
            .collect();
        let c = min_enclosing_circle(&pts);
        assert!((c.radius - a).abs() < 1e-12);
        assert!(c.center.norm() < 1e-12);
    }

    #[test]
    fn obtuse_triangle_uses_longest_side() {
        let c = min_enclosing_circle(&[Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 0.1)]);
        assert!((c.radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_points() {
        let c = min_enclosing_circle(&[Point2::new(0.0, 0.0), Point2::new(1.0, 1.0), Point2::new(3.0, 3.0)]);
        assert!((c.radius - 1.5 * 2f64.sqrt()).abs() < 1e-12);
    }
}
