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

use super::polygon::{Point2, Polygon2};
use crate::error::{GeomError, Result};

/// `{(s, t) : a·t + b1 ≤ s ≤ a·t + b2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub slope: f64,
    pub b1: f64,
    pub b2: f64,
}

impl Strip {
    pub fn horizontal_width(&self) -> f64 {
        self.b2 - self.b1
    }

    pub fn contains(&self, p: &Point2, tol: f64) -> bool {
        let x = p.x - self.slope * p.y;
        x >= self.b1 - tol && x <= self.b2 + tol
    }
}

fn sheared_extent(vertices: &[Point2], a: f64) -> (f64, f64) {
    vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let x = p.x - a * p.y;
        (lo.min(x), hi.max(x))
    })
}

/// Minimal horizontal width over all non-horizontal strips containing `p`.
///
/// `f(a) = max(s − a·t) − min(s − a·t)` is convex and piecewise linear; its
/// breakpoints are the slopes of the non-horizontal hull edges, so the
/// minimum is found exactly by evaluating those.
pub fn horizontal_width(p: &Polygon2) -> (f64, Strip) {
    let v = p.vertices();
    if v.is_empty() {
        return (0.0, Strip { slope: 0.0, b1: 0.0, b2: 0.0 });
    }
    let mut slopes: Vec<f64> = p
        .edges()
        .filter(|(a, b)| {
            let dt = b.y - a.y;
            dt != 0.0 && dt.abs() > 1e-15 * (b.x - a.x).abs()
        })
        .map(|(a, b)| (b.x - a.x) / (b.y - a.y))
        .collect();
    if slopes.is_empty() {
        slopes.push(0.0);
    }
    let mut best: Option<(f64, f64, f64)> = None;
    for a in slopes {
        let (lo, hi) = sheared_extent(v, a);
        if best.is_none_or(|(w, _, _)| hi - lo < w) {
            best = Some((hi - lo, a, lo));
        }
    }
    let (w, slope, b1) = best.unwrap();
    (w, Strip { slope, b1, b2: b1 + w })
}

/// Horizontal width of the convex hull of a point set.
pub fn horizontal_width_points(points: &[Point2]) -> (f64, Strip) {
    horizontal_width(&Polygon2::hull(points))
}

/// The four horizontal widths of a polygon split by the axis `t = 0` and the
/// residuals of the min/max identities they satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitIdentityReport {
    pub wh_upper: f64,
    pub wh_lower: f64,
    pub wh_intersection: f64,
    pub wh_union: f64,
    pub residual_min: f64,
    pub residual_max: f64,
}

/// Splits `p` into `A = p ∩ {t ≥ 0}` and `B = p ∩ {t ≤ 0}` and checks
/// `w_h(A∩B) = min(w_h(A), w_h(B))` and `w_h(A∪B) = max(w_h(A), w_h(B))`.
pub fn split_identities(p: &Polygon2) -> Result<SplitIdentityReport> {
    let v = p.vertices();
    let above = v.iter().any(|q| q.y > 0.0);
    let below = v.iter().any(|q| q.y < 0.0);
    if !(above && below) || p.is_degenerate() {
        return Err(GeomError::InvalidInput("polygon does not cross the axis t = 0".into()));
    }
    let upper = p.clip(&Point2::new(0.0, -1.0), 0.0);
    let lower = p.clip(&Point2::new(0.0, 1.0), 0.0);
    // A∩B is the horizontal chord on t = 0; its horizontal width is its length.
    let n = v.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        if a.y == 0.0 {
            lo = lo.min(a.x);
            hi = hi.max(a.x);
        }
        if (a.y < 0.0 && b.y > 0.0) || (a.y > 0.0 && b.y < 0.0) {
            let s = a.x + (b.x - a.x) * (a.y / (a.y - b.y));
            lo = lo.min(s);
            hi = hi.max(s);
        }
    }
    let wh_intersection = (hi - lo).max(0.0);
    let wh_upper = horizontal_width(&upper).0;
    let wh_lower = horizontal_width(&lower).0;
    let wh_union = horizontal_width(p).0;
    Ok(SplitIdentityReport {
        wh_upper,
        wh_lower,
        wh_intersection,
        wh_union,
        residual_min: (wh_intersection - wh_upper.min(wh_lower)).abs(),
        residual_max: (wh_union - wh_upper.max(wh_lower)).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::width2;

    fn poly(pts: &[(f64, f64)]) -> Polygon2 {
        Polygon2::hull(&pts.iter().map(|&(s, t)| Point2::new(s, t)).collect::<Vec<_>>())
    }

    /// Independent check: scan a dense slope grid around the reported optimum.
    fn brute_min(p: &Polygon2, lo: f64, hi: f64) -> f64 {
        (0..=200_000)
            .map(|k| lo + (hi - lo) * k as f64 / 200_000.0)
            .map(|a| {
                let (l, h) = sheared_extent(p.vertices(), a);
                h - l
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn unit_square() {
        let (w, strip) = horizontal_width(&poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]));
        assert!((w - 1.0).abs() < 1e-15);
        assert_eq!(strip.slope, 0.0);
    }

    #[test]
    fn skewed_triangle() {
        let p = poly(&[(0., 0.), (1., 0.), (5., 1.)]);
        let (w, strip) = horizontal_width(&p);
        assert!((w - 1.0).abs() < 1e-12);
        assert!((4.0..=5.0).contains(&strip.slope));
        assert!((brute_min(&p, -10.0, 10.0) - 1.0).abs() < 1e-9);
        for q in p.vertices() {
            assert!(strip.contains(q, 1e-12));
        }
    }

    #[test]
    fn parallelogram_is_shear_of_square() {
        let (w, _) = horizontal_width(&poly(&[(0., 0.), (1., 0.), (3., 1.), (2., 1.)]));
        assert!((w - 1.0).abs() < 1e-12);
    }

    #[test]
    fn segments() {
        assert!((horizontal_width(&poly(&[(-1., 0.), (2., 0.)])).0 - 3.0).abs() < 1e-15);
        assert!(horizontal_width(&poly(&[(0., 0.), (2., 1.)])).0.abs() < 1e-15);
    }

    #[test]
    fn split_identities_square_and_triangle() {
        let r = split_identities(&poly(&[(0., -0.5), (1., -0.5), (1., 0.5), (0., 0.5)])).unwrap();
        for w in [r.wh_upper, r.wh_lower, r.wh_intersection, r.wh_union] {
            assert!((w - 1.0).abs() < 1e-12);
        }
        assert!(r.residual_min < 1e-12 && r.residual_max < 1e-12);

        let r = split_identities(&poly(&[(0., 1.), (-1., -1.), (1., -1.)])).unwrap();
        assert!((r.wh_intersection - 1.0).abs() < 1e-12);
        assert!((r.wh_upper - 1.0).abs() < 1e-12);
        assert!((r.wh_lower - 2.0).abs() < 1e-12);
        assert!((r.wh_union - 2.0).abs() < 1e-12);
    }

    #[test]
    fn split_identities_reject_one_sided() {
        let p = poly(&[(0., 0.1), (1., 0.1), (0., 1.)]);
        assert!(matches!(split_identities(&p), Err(GeomError::InvalidInput(_))));
    }

    #[test]
    fn shear_changes_planar_width_but_not_horizontal_width() {
        let p = poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        let q = p.map(|v| Point2::new(v.x + 2.0 * v.y, v.y));
        assert!((horizontal_width(&p).0 - horizontal_width(&q).0).abs() < 1e-12);
        assert!((width2(&p).width - width2(&q).width).abs() > 0.1);
    }
}
