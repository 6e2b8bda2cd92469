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

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::chain::{ChainCertificate, Section};
use crate::error::{GeomError, Result};
use crate::optim::{golden_min, nelder_mead};
use crate::planar::{chebyshev_inscribed, hausdorff_distance, width2, Point2, Polygon2};

/// Equilateral triangle of the given height, center and rotation (angle of
/// its first vertex seen from the center).
pub fn equilateral_triangle(center: Point2, height: f64, rotation: f64) -> Polygon2 {
    let rc = 2.0 * height / 3.0;
    let pts: Vec<Point2> = (0..3)
        .map(|k| {
            let a = rotation + TAU * k as f64 / 3.0;
            center + Point2::new(a.cos(), a.sin()) * rc
        })
        .collect();
    Polygon2::hull(&pts)
}

/// Equilateral triangle of height `w₂(p)` closest to `p` in the Hausdorff
/// distance, with that distance.
pub fn equilateral_fit(p: &Polygon2) -> Result<(f64, Polygon2)> {
    let height = width2(p).width;
    let c0 = chebyshev_inscribed(p)?.center;
    let cost = |x: &[f64]| hausdorff_distance(p, &equilateral_triangle(Point2::new(x[0], x[1]), height, x[2]));
    let mut best = (f64::INFINITY, [c0.x, c0.y, 0.0]);
    for k in 0..24 {
        let rot = TAU / 3.0 * k as f64 / 24.0;
        let v = cost(&[c0.x, c0.y, rot]);
        if v < best.0 {
            best = (v, [c0.x, c0.y, rot]);
        }
    }
    let m = nelder_mead(cost, &best.1, 0.05 * height.max(1e-9), 1e-14, 6000, 6);
    let x = if m.value < best.0 { [m.x[0], m.x[1], m.x[2]] } else { best.1 };
    let tri = equilateral_triangle(Point2::new(x[0], x[1]), height, x[2]);
    Ok((hausdorff_distance(p, &tri), tri))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extremality {
    pub hausdorff: f64,
    /// Hausdorff distance after scaling the circle diameter to 2.
    pub hausdorff_normalized: f64,
    pub triangle: Polygon2,
    /// Largest distance from a contact image to the nearest of the three
    /// points `(d/2)·{1, j, j²}`, after the best common rotation.
    pub cluster_distance: f64,
    pub cluster_rotation: f64,
}

/// Distance of `I ∩ H` to an equilateral triangle and of the contact images
/// to three equally spaced points of the circle.
pub fn extremality_diagnostics(cert: &ChainCertificate, diameter: f64) -> Result<Extremality> {
    let Section::Polygon(section) = &cert.section else {
        return Err(GeomError::InvalidInput("the section is a strip".into()));
    };
    let (hausdorff, triangle) = equilateral_fit(section)?;
    let r = 0.5 * diameter;
    let spread = |rot: f64| {
        cert.contact_images
            .iter()
            .map(|q| {
                (0..3)
                    .map(|k| {
                        let a = rot + TAU * k as f64 / 3.0;
                        (q - Point2::new(a.cos(), a.sin()) * r).norm()
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0_f64, f64::max)
    };
    let n = 720;
    let step = TAU / 3.0 / n as f64;
    let i = (0..n).min_by(|&a, &b| spread(a as f64 * step).total_cmp(&spread(b as f64 * step))).unwrap_or(0);
    let (cluster_rotation, cluster_distance) = golden_min(spread, (i as f64 - 1.0) * step, (i as f64 + 1.0) * step, 1e-12);
    Ok(Extremality {
        hausdorff,
        hausdorff_normalized: hausdorff * 2.0 / diameter,
        triangle,
        cluster_distance,
        cluster_rotation: cluster_rotation.rem_euclid(TAU / 3.0),
    })
}
