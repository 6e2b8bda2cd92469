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

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::Circle3;
use crate::convex::{Point3, Polytope3};

/// A point of the circle lying inside the body, with its depth below the
/// nearest face plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Penetration {
    pub angle: f64,
    pub point: Point3,
    pub depth: f64,
}

/// Sorted disjoint closed intervals of `[0, 2π)`.
type ArcSet = Vec<(f64, f64)>;

fn intersect(set: &ArcSet, arc: &ArcSet) -> ArcSet {
    let mut out = Vec::new();
    for &(a0, a1) in set {
        for &(b0, b1) in arc {
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if lo <= hi {
                out.push((lo, hi));
            }
        }
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

/// Closed arc `{t : ρ cos(t − ψ) ≤ γ}` split into intervals of `[0, 2π)`;
/// `None` means the whole circle.
fn face_arc(rho: f64, psi: f64, gamma: f64) -> Option<ArcSet> {
    if gamma >= rho {
        return None;
    }
    if gamma < -rho {
        return Some(Vec::new());
    }
    let half = PI - (gamma / rho).clamp(-1.0, 1.0).acos();
    let start = (psi + PI - half).rem_euclid(TAU);
    let end = start + 2.0 * half;
    Some(if end <= TAU { vec![(start, end)] } else { vec![(0.0, end - TAU), (start, TAU)] })
}

/// Whether the circle meets the interior of `k` by more than `tol`.
///
/// For each face `n·p ≤ b` the circle points with `n·p ≤ b − tol` form an
/// arc; the circle penetrates iff the arcs have a common point.
pub fn circle_interior_intersects(c: &Circle3, k: &Polytope3, tol: f64) -> Option<Penetration> {
    let r = c.radius();
    let (e1, e2) = c.basis();
    let mut set: ArcSet = vec![(0.0, TAU)];
    for f in k.faces() {
        let alpha = r * f.normal.dot(&e1);
        let beta = r * f.normal.dot(&e2);
        let gamma = f.offset - f.normal.dot(&c.center) - tol;
        let rho = alpha.hypot(beta);
        if let Some(arc) = face_arc(rho, beta.atan2(alpha), gamma) {
            set = intersect(&set, &arc);
            if set.is_empty() {
                return None;
            }
        }
    }
    let (lo, hi) = set.iter().copied().max_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0)))?;
    let angle = 0.5 * (lo + hi);
    let point = c.point_at(angle);
    let depth = k.faces().iter().map(|f| f.offset - f.normal.dot(&point)).fold(f64::INFINITY, f64::min);
    Some(Penetration { angle, point, depth })
}

/// Largest depth over `samples` equally spaced circle points; positive means
/// the sampled circle enters the interior.
pub fn sampled_depth(c: &Circle3, k: &Polytope3, samples: usize) -> f64 {
    (0..samples)
        .map(|i| {
            let p = c.point_at(TAU * i as f64 / samples as f64);
            k.faces().iter().map(|f| f.offset - f.normal.dot(&p)).fold(f64::INFINITY, f64::min)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_hull;
    use crate::families::octahedron_iceberg;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cube() -> Polytope3 {
        let pts: Vec<Point3> = (0..8)
            .map(|i| Point3::new([-1.0, 1.0][i & 1], [-1.0, 1.0][(i >> 1) & 1], [-1.0, 1.0][(i >> 2) & 1]))
            .collect();
        build_hull(&pts).unwrap()
    }

    #[test]
    fn circles_in_a_cube() {
        let big = Circle3::horizontal(Point3::new(0.0, 0.0, 0.5), 4.0);
        assert!(circle_interior_intersects(&big, &cube(), 1e-9).is_none());
        let small = Circle3::horizontal(Point3::new(0.0, 0.0, 0.5), 1.0);
        let p = circle_interior_intersects(&small, &cube(), 1e-9).unwrap();
        assert!(p.depth > 0.4);
    }

    #[test]
    fn octahedron_circle_does_not_penetrate() {
        let o = octahedron_iceberg(1.38, 5.0).unwrap();
        let c = o.circle.unwrap();
        assert!(circle_interior_intersects(&c, &o.body, 1e-9).is_none());
        assert!(sampled_depth(&c, &o.body, 10_000) < 1e-9);
        let shrunk = Circle3 { diameter: c.diameter * 0.99, ..c };
        assert!(circle_interior_intersects(&shrunk, &o.body, 1e-9).is_some());
    }

    #[test]
    fn agrees_with_sampling_on_random_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let k = cube();
        for _ in 0..300 {
            let center = Point3::from_fn(|_, _| rng.random_range(-1.5..1.5));
            let normal = Point3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            let Ok(c) = Circle3::new(center, rng.random_range(0.2..5.0), normal) else { continue };
            let depth = sampled_depth(&c, &k, 10_000);
            if depth.abs() < 1e-3 {
                continue;
            }
            assert_eq!(circle_interior_intersects(&c, &k, 1e-9).is_some(), depth > 0.0);
        }
    }
}
