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

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::profile::slice_circumcircle;
use super::Circle3;
use crate::convex::{width3, HalfSpace, Point3, Polytope3};
use crate::error::{GeomError, Result};
use crate::optim::golden_min;
use crate::planar::{chebyshev_inscribed, horizontal_width, width2, HalfPlane, Point2, Polygon2};
use crate::tol::{TAU_GEOM, TAU_OPT};

/// Intersection of the half-spaces `E_a` with the circle plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Section {
    Polygon(Polygon2),
    /// `{p : |normal·p| ≤ half_width}`, from two antipodal contacts.
    Strip { normal: Point2, half_width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainValues {
    pub w: f64,
    pub min_wh_union: f64,
    pub min_wh_b: f64,
    pub theta_wh_b: f64,
    pub min_wh_i: f64,
    pub theta_wh_i: f64,
    pub w2_section: f64,
    pub three_halves_d: f64,
    pub section_inradius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainChecks {
    /// `w ≤ min w_h(A_θ ∪ B_θ)`.
    pub w_le_union: bool,
    /// `min w_h(A_θ ∪ B_θ) = min w_h(B_θ)`.
    pub union_eq_b: bool,
    /// `w ≤ min w_h(B_θ)`.
    pub w_le_b: bool,
    /// `min w_h(B_θ) < min w_h(I_θ)`.
    pub b_lt_i: bool,
    /// `min w_h(I_θ) = w₂(I ∩ H)` within `1e-6`.
    pub i_eq_w2: bool,
    /// `w₂(I ∩ H) ≤ 3d/2`.
    pub w2_le_three_halves_d: bool,
    /// Every contact is carried onto the circle by the projection and homothety.
    pub contacts_on_circle: bool,
    /// The circle is a largest circle inscribed in `I ∩ H`.
    pub circle_inscribed: bool,
}

impl ChainChecks {
    pub fn all(&self) -> bool {
        self.w_le_b && self.b_lt_i && self.i_eq_w2 && self.w2_le_three_halves_d
    }
}

/// Numeric instance of the chain `w ≤ min w_h(B_θ) < min w_h(I_θ) = w₂(I∩H) ≤ 3d/2`
/// for a horizontal circle, in the frame where the circle is centered at the
/// origin with normal `+z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub slice_height: f64,
    pub slice_center: Point3,
    pub slice_diameter: f64,
    /// Direction of the line through the centers of the circle and the slice circumcircle.
    pub delta: Point3,
    /// Homothety ratio `d / d_h`.
    pub ratio: f64,
    pub contacts: Vec<Point3>,
    /// Images of the contacts in the circle plane.
    pub contact_images: Vec<Point2>,
    pub halfplanes: Vec<HalfPlane>,
    pub section: Section,
    pub values: ChainValues,
    pub checks: ChainChecks,
}

const THETA_SAMPLES: usize = 720;

/// Minimum over `θ ∈ [0, π)` of `f`, from a uniform grid refined by
/// golden-section search around the best sample.
pub(crate) fn min_over_theta(f: impl Fn(f64) -> f64, samples: usize) -> (f64, f64) {
    let dt = PI / samples as f64;
    let (mut bt, mut bv) = (0.0, f64::INFINITY);
    for i in 0..samples {
        let t = dt * i as f64;
        let v = f(t);
        if v < bv {
            (bt, bv) = (t, v);
        }
    }
    let (t, v) = golden_min(&f, bt - dt, bt + dt, 1e-12);
    if v < bv {
        (t.rem_euclid(PI), v)
    } else {
        (bt, bv)
    }
}

fn projected_hull(points: &[Point3], theta: f64) -> Polygon2 {
    let (c, s) = (theta.cos(), theta.sin());
    let pts: Vec<Point2> = points.iter().map(|p| Point2::new(p.x * c + p.y * s, p.z)).collect();
    Polygon2::hull(&pts)
}

fn cluster(points: Vec<Point2>, tol: f64) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::new();
    for p in points {
        if out.iter().all(|q| (q - p).norm() > tol) {
            out.push(p);
        }
    }
    out
}

/// Builds the chain certificate of `c` holding `k`. The upper side is the one
/// the circle normal points to.
pub fn chain_certificate(k: &Polytope3, c: &Circle3) -> Result<ChainCertificate> {
    let local = k.transformed(&c.to_frame());
    let d = c.diameter;
    let r = 0.5 * d;
    let (lo, hi) = local.extent(&Point3::z());
    if hi <= TAU_GEOM {
        return Err(GeomError::NoBlockingSlice);
    }

    let dh = |t: f64| slice_circumcircle(&local, &Point3::z(), t).map_or(0.0, |(_, m)| m.diameter());
    let n = 200;
    let hs: Vec<f64> = (0..n).map(|i| hi * i as f64 / (n - 1) as f64).collect();
    let vals: Vec<f64> = hs.iter().map(|&t| dh(t)).collect();
    let i = (0..n).max_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    let (a, b) = (hs[i.saturating_sub(1)], hs[(i + 1).min(n - 1)]);
    let (mut h, neg) = golden_min(|t| -dh(t), a, b, 1e-12 * hi.max(1.0));
    if -neg < vals[i] {
        h = hs[i];
    }
    if h <= TAU_GEOM {
        h = hs[1.min(n - 1)];
    }
    let slice = local.slice(&HalfSpace::new(Point3::z(), h), TAU_GEOM)?;
    let mec = crate::planar::min_enclosing_circle(slice.polygon.vertices());
    let big_r = mec.radius;
    if 2.0 * big_r <= d + TAU_OPT {
        return Err(GeomError::NoBlockingSlice);
    }
    let p = mec.center;
    let delta = Point3::new(p.x, p.y, h).normalize();
    let ratio = d / (2.0 * big_r);

    let raw: Vec<Point2> =
        slice.polygon.vertices().iter().filter(|v| (*v - p).norm() >= big_r * (1.0 - 1e-7)).copied().collect();
    let on_circle = cluster(raw, 1e-9 * big_r.max(1.0));
    let contacts: Vec<Point3> = on_circle.iter().map(|v| Point3::new(v.x, v.y, h)).collect();
    // Projection along Δ onto z = 0 followed by the homothety of ratio d/d_h.
    let contact_images: Vec<Point2> = on_circle.iter().map(|v| (v - p) * ratio).collect();
    let halfplanes: Vec<HalfPlane> = contact_images.iter().map(|q| HalfPlane::new(q.normalize(), r)).collect();
    let contacts_on_circle = contact_images.iter().all(|q| (q.norm() - r).abs() < 1e-9 * r.max(1.0));

    let units: Vec<Point2> = contact_images.iter().map(|q| q.normalize()).collect();
    let antipodal_pair = units.len() == 2 && units[0].dot(&units[1]) < -1.0 + 1e-9;
    let big = 1e3 * (local.radius() + d + (hi - lo));
    let square = Polygon2::hull(&[
        Point2::new(-big, -big),
        Point2::new(big, -big),
        Point2::new(big, big),
        Point2::new(-big, big),
    ]);
    let clipped = halfplanes.iter().fold(square, |poly, hp| poly.clip(&hp.normal, hp.offset));
    let bounded = clipped.vertices().iter().all(|v| v.amax() < 0.5 * big);
    let section = if antipodal_pair || !bounded {
        Section::Strip { normal: units[0], half_width: r }
    } else {
        Section::Polygon(clipped.clone())
    };
    let (w2_section, section_inradius) = match &section {
        Section::Polygon(poly) => (width2(poly).width, chebyshev_inscribed(poly).map_or(0.0, |c| c.radius)),
        Section::Strip { half_width, .. } => (2.0 * half_width, *half_width),
    };

    // The prism I over the (truncated) section, cut at heights ±T.
    let t_cap = 2.0 * (hi - lo) + d;
    let prism: Vec<Point3> = clipped
        .vertices()
        .iter()
        .flat_map(|v| {
            [-t_cap, t_cap].map(|t| Point3::new(v.x + p.x * t / h, v.y + p.y * t / h, t))
        })
        .collect();
    let (theta_wh_i, min_wh_i) = min_over_theta(|t| horizontal_width(&projected_hull(&prism, t)).0, THETA_SAMPLES);

    let lower = local.clip(&HalfSpace::new(Point3::z(), 0.0), TAU_GEOM)?;
    let (theta_wh_b, min_wh_b) =
        min_over_theta(|t| horizontal_width(&projected_hull(lower.vertices(), t)).0, THETA_SAMPLES);
    let (_, min_wh_union) =
        min_over_theta(|t| horizontal_width(&projected_hull(local.vertices(), t)).0, THETA_SAMPLES);
    let w = width3(k)?.width;

    let tol = 1e-9 * (1.0 + d);
    let values = ChainValues {
        w,
        min_wh_union,
        min_wh_b,
        theta_wh_b,
        min_wh_i,
        theta_wh_i,
        w2_section,
        three_halves_d: 1.5 * d,
        section_inradius,
    };
    let checks = ChainChecks {
        w_le_union: w <= min_wh_union + tol,
        union_eq_b: (min_wh_union - min_wh_b).abs() <= 1e-6,
        w_le_b: w <= min_wh_b + tol,
        b_lt_i: min_wh_b < min_wh_i - tol,
        i_eq_w2: (min_wh_i - w2_section).abs() < 1e-6,
        w2_le_three_halves_d: w2_section <= 1.5 * d + tol,
        contacts_on_circle,
        circle_inscribed: section_inradius >= r - 1e-9 * r.max(1.0),
    };
    Ok(ChainCertificate {
        slice_height: h,
        slice_center: Point3::new(p.x, p.y, h),
        slice_diameter: 2.0 * big_r,
        delta,
        ratio,
        contacts,
        contact_images,
        halfplanes,
        section,
        values,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_hull;
    use crate::families::octahedron_iceberg;

    #[test]
    fn octahedron_chain_holds() {
        let o = octahedron_iceberg(1.38, 5.0).unwrap();
        let cert = chain_certificate(&o.body, &o.circle.unwrap()).unwrap();
        assert!(cert.ratio > 0.0 && cert.ratio < 1.0);
        assert!(cert.checks.all(), "{:?} {:?}", cert.checks, cert.values);
        assert!(cert.checks.contacts_on_circle && cert.checks.circle_inscribed);
        assert!(cert.contacts.len() >= 3);
    }

    #[test]
    fn symmetric_wedge_gives_a_strip() {
        // A wedge whose top ridge is a segment: the slice circumcircle there
        // touches only the two ridge ends.
        let pts = [
            Point3::new(-2.0, 0.0, 1.0),
            Point3::new(2.0, 0.0, 1.0),
            Point3::new(-1.0, -1.0, -1.0),
            Point3::new(1.0, -1.0, -1.0),
            Point3::new(-1.0, 1.0, -1.0),
            Point3::new(1.0, 1.0, -1.0),
        ];
        let k = build_hull(&pts).unwrap();
        let c = Circle3::horizontal(Point3::zeros(), 3.0);
        let cert = chain_certificate(&k, &c).unwrap();
        assert!(matches!(cert.section, Section::Strip { .. }));
        assert!((cert.values.w2_section - 3.0).abs() < 1e-12);
        assert!((cert.values.min_wh_i - 3.0).abs() < 1e-6);
    }

    #[test]
    fn no_blocking_slice_is_reported() {
        let pts: Vec<Point3> = (0..8)
            .map(|i| Point3::new([-1.0, 1.0][i & 1], [-1.0, 1.0][(i >> 1) & 1], [-1.0, 1.0][(i >> 2) & 1]))
            .collect();
        let k = build_hull(&pts).unwrap();
        let c = Circle3::horizontal(Point3::zeros(), 4.0);
        assert!(matches!(chain_certificate(&k, &c), Err(GeomError::NoBlockingSlice)));
    }
}
