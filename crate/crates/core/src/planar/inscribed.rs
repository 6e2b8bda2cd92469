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

use super::circle::Circle2;
use super::polygon::{Point2, Polygon2};
use crate::error::{GeomError, Result};

/// `{p : normal·p ≤ offset}` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub normal: Point2,
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal: Point2, offset: f64) -> Self {
        let len = normal.norm();
        Self { normal: normal / len, offset: offset / len }
    }
}

/// Largest circle inside the polygon, via the linear program
/// `max r  s.t.  nᵢ·c + r ≤ bᵢ`.
pub fn chebyshev_inscribed(p: &Polygon2) -> Result<Circle2> {
    if p.is_degenerate() || p.area() <= 0.0 {
        return Err(GeomError::DegenerateInput("inscribed circle of a degenerate polygon".into()));
    }
    let hps: Vec<HalfPlane> = p
        .edges()
        .map(|(a, b)| {
            let d = b - a;
            let n = Point2::new(d.y, -d.x);
            HalfPlane::new(n, n.dot(&a))
        })
        .collect();
    let v = p.vertices();
    let centroid = v.iter().sum::<Point2>() / v.len() as f64;
    chebyshev_halfplanes(&hps, &centroid)
        .ok_or_else(|| GeomError::DegenerateInput("inscribed circle LP failed".into()))
}

/// Chebyshev center of an intersection of half-planes. `interior` must satisfy
/// every constraint; returns `None` when the radius is unbounded.
pub fn chebyshev_halfplanes(hps: &[HalfPlane], interior: &Point2) -> Option<Circle2> {
    // Shift so the reference point is the origin, making the slack basis feasible.
    let m = hps.len();
    let nv = 5; // cx+, cx-, cy+, cy-, r
    let mut a = vec![vec![0.0; nv]; m];
    let mut b = vec![0.0; m];
    for (i, h) in hps.iter().enumerate() {
        a[i] = vec![h.normal.x, -h.normal.x, h.normal.y, -h.normal.y, 1.0];
        b[i] = (h.offset - h.normal.dot(interior)).max(0.0);
    }
    let x = simplex_max(&a, &b, &[0.0, 0.0, 0.0, 0.0, 1.0])?;
    let center = interior + Point2::new(x[0] - x[1], x[2] - x[3]);
    let radius = hps
        .iter()
        .map(|h| h.offset - h.normal.dot(&center))
        .fold(f64::INFINITY, f64::min);
    Some(Circle2::new(center, radius))
}

/// Dense tableau simplex for `max c·x, Ax ≤ b, x ≥ 0` with `b ≥ 0`, using
/// Bland's rule. Returns `None` if unbounded.
fn simplex_max(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Option<Vec<f64>> {
    let m = a.len();
    let n = c.len();
    let width = n + m + 1;
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        t[i][..n].copy_from_slice(&a[i]);
        t[i][n + i] = 1.0;
        t[i][width - 1] = b[i];
    }
    for j in 0..n {
        t[m][j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let eps = 1e-12;
    for _ in 0..10_000 {
        let Some(enter) = (0..n + m).find(|&j| t[m][j] < -eps) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][enter] > eps {
                let ratio = t[i][width - 1] / t[i][enter];
                let better = ratio < best - 1e-15
                    || (ratio <= best + 1e-15 && leave.is_some_and(|l| basis[i] < basis[l]));
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let r = leave?;
        let piv = t[r][enter];
        for v in t[r].iter_mut() {
            *v /= piv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r {
                let f = row[enter];
                if f != 0.0 {
                    for (v, p) in row.iter_mut().zip(&pivot_row) {
                        *v -= f * p;
                    }
                }
            }
        }
        basis[r] = enter;
    }
    let mut x = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1];
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: the optimum is the incircle of some triple of constraint lines.
    fn triple_oracle(hps: &[HalfPlane]) -> f64 {
        let mut best = 0.0_f64;
        let m = hps.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    // Solve n·c + r = b for the three lines.
                    let rows = [hps[i], hps[j], hps[k]];
                    let mat = nalgebra::Matrix3::from_fn(|r, col| match col {
                        0 => rows[r].normal.x,
                        1 => rows[r].normal.y,
                        _ => 1.0,
                    });
                    let rhs = nalgebra::Vector3::new(rows[0].offset, rows[1].offset, rows[2].offset);
                    if let Some(sol) = mat.lu().solve(&rhs) {
                        let c = Point2::new(sol.x, sol.y);
                        let r = hps.iter().map(|h| h.offset - h.normal.dot(&c)).fold(f64::INFINITY, f64::min);
                        if (r - sol.z).abs() < 1e-9 {
                            best = best.max(r);
                        }
                    }
                }
            }
        }
        best
    }

    #[test]
    fn square_and_equilateral_triangle() {
        let sq = Polygon2::hull(&[
            Point2::new(0., 0.),
            Point2::new(1., 0.),
            Point2::new(1., 1.),
            Point2::new(0., 1.),
        ]);
        let c = chebyshev_inscribed(&sq).unwrap();
        assert!((c.radius - 0.5).abs() < 1e-12);
        let side = 6.0 / 3f64.sqrt();
        let tri = Polygon2::hull(&[Point2::new(0., 0.), Point2::new(side, 0.), Point2::new(side / 2., 3.)]);
        let c = chebyshev_inscribed(&tri).unwrap();
        assert!((c.radius - 1.0).abs() < 1e-12);
        assert!((c.center - Point2::new(side / 2., 1.)).norm() < 1e-12);
    }

    #[test]
    fn strip_radius_is_half_width() {
        let hps = [
            HalfPlane::new(Point2::new(0.0, 1.0), 1.0),
            HalfPlane::new(Point2::new(0.0, -1.0), 1.0),
        ];
        let c = chebyshev_halfplanes(&hps, &Point2::zeros()).unwrap();
        assert!((c.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_triple_enumeration_on_random_polygons() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let pts: Vec<Point2> = (0..rng.random_range(5..20))
                .map(|_| Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let p = Polygon2::hull(&pts);
            let hps: Vec<HalfPlane> = p
                .edges()
                .map(|(a, b)| {
                    let d = b - a;
                    let n = Point2::new(d.y, -d.x);
                    HalfPlane::new(n, n.dot(&a))
                })
                .collect();
            let c = chebyshev_inscribed(&p).unwrap();
            assert!((c.radius - triple_oracle(&hps)).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_polygon_is_rejected() {
        let seg = Polygon2::hull(&[Point2::new(0., 0.), Point2::new(1., 0.)]);
        assert!(chebyshev_inscribed(&seg).is_err());
    }
}
