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

//! Derivative-free local minimization and direction grids on spheres.

use std::collections::HashMap;

use nalgebra::Vector3;

/// Result of a Nelder–Mead run.
#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for a minimum of `f` on `[a, b]`; returns the best
/// point seen, including the endpoints.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut best = (lo, f(lo));
    let fh = f(hi);
    if fh < best.1 {
        best = (hi, fh);
    }
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > xtol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v < best.1 {
            best = (x, v);
        }
    }
    best
}

/// Nelder–Mead simplex search with restarts.
///
/// Each restart rebuilds the simplex around the incumbent with half the
/// previous step, which keeps the method from stalling on the kinks of
/// max-type objectives.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    ftol: f64,
    max_evals: usize,
    restarts: usize,
) -> Minimum {
    let n = x0.len();
    let mut best_x = x0.to_vec();
    let mut best_v = f(&best_x);
    let mut evals = 1;
    let mut step = step;
    for _ in 0..=restarts {
        let mut pts: Vec<Vec<f64>> = vec![best_x.clone()];
        for i in 0..n {
            let mut p = best_x.clone();
            p[i] += step;
            pts.push(p);
        }
        let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();
        evals += n + 1;
        while evals < max_evals {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
            pts = order.iter().map(|&i| pts[i].clone()).collect();
            vals = order.iter().map(|&i| vals[i]).collect();
            let spread = vals[n] - vals[0];
            let size = pts[1..]
                .iter()
                .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if spread <= ftol * (1e-30 + vals[0].abs()) && size < 1e-13 || size < 1e-15 {
                break;
            }
            let centroid: Vec<f64> = (0..n)
                .map(|j| pts[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                (0..n).map(|j| centroid[j] + t * (pts[n][j] - centroid[j])).collect()
            };
            let xr = along(-1.0);
            let fr = f(&xr);
            evals += 1;
            if fr < vals[0] {
                let xe = along(-2.0);
                let fe = f(&xe);
                evals += 1;
                if fe < fr {
                    pts[n] = xe;
                    vals[n] = fe;
                } else {
                    pts[n] = xr;
                    vals[n] = fr;
                }
            } else if fr < vals[n - 1] {
                pts[n] = xr;
                vals[n] = fr;
            } else {
                let (xc, fc) = if fr < vals[n] {
                    let xc = along(-0.5);
                    let v = f(&xc);
                    (xc, v)
                } else {
                    let xc = along(0.5);
                    let v = f(&xc);
                    (xc, v)
                };
                evals += 1;
                if fc < vals[n].min(fr) {
                    pts[n] = xc;
                    vals[n] = fc;
                } else {
                    for i in 1..=n {
                        pts[i] = (0..n).map(|j| pts[0][j] + 0.5 * (pts[i][j] - pts[0][j])).collect();
                        vals[i] = f(&pts[i]);
                    }
                    evals += n;
                }
            }
        }
        let (i, v) = vals
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, v)| (i, *v))
            .unwrap();
        if v <= best_v {
            best_v = v;
            best_x = pts[i].clone();
        }
        step *= 0.5;
        if evals >= max_evals {
            break;
        }
    }
    Minimum { x: best_x, value: best_v, evaluations: evals }
}

/// Orthonormal pair spanning the plane orthogonal to the unit vector `n`.
pub fn tangent_basis(n: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let e = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let u = (e - n * n.dot(&e)).normalize();
    let v = n.cross(&u);
    (u, v)
}

/// Maps local coordinates around `center` to a unit vector.
pub fn sphere_chart(center: &Vector3<f64>, basis: &(Vector3<f64>, Vector3<f64>), p: &[f64]) -> Vector3<f64> {
    (center + basis.0 * p[0] + basis.1 * p[1]).normalize()
}

/// Vertices of the `level`-times subdivided icosahedron (`10·4^level + 2` unit vectors).
///
/// Subdivision keeps all coarser vertices, so grids are nested across levels.
pub fn icosphere(level: u32) -> Vec<Vector3<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Vector3<f64>> = [
        (-1.0, phi, 0.0),
        (1.0, phi, 0.0),
        (-1.0, -phi, 0.0),
        (1.0, -phi, 0.0),
        (0.0, -1.0, phi),
        (0.0, 1.0, phi),
        (0.0, -1.0, -phi),
        (0.0, 1.0, -phi),
        (phi, 0.0, -1.0),
        (phi, 0.0, 1.0),
        (-phi, 0.0, -1.0),
        (-phi, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vector3::new(x, y, z).normalize())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ];
    for _ in 0..level {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, verts: &mut Vec<Vector3<f64>>| -> usize {
            let key = (a.min(b), a.max(b));
            *mid.entry(key).or_insert_with(|| {
                verts.push(((verts[a] + verts[b]) * 0.5).normalize());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    verts
}

/// Icosphere directions with antipodal duplicates removed.
pub fn hemisphere(level: u32) -> Vec<Vector3<f64>> {
    icosphere(level)
        .into_iter()
        .filter(|u| u.z > 1e-12 || (u.z.abs() <= 1e-12 && (u.y > 1e-12 || (u.y.abs() <= 1e-12 && u.x > 0.0))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_kink_minimum() {
        let (x, v) = golden_min(|x| (x - 0.3).abs() + 1.0, -1.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-9 && (v - 1.0).abs() < 1e-9);
        let (x, _) = golden_min(|x| x, 0.0, 1.0, 1e-9);
        assert_eq!(x, 0.0);
    }

    #[test]
    fn icosphere_counts() {
        assert_eq!(icosphere(0).len(), 12);
        assert_eq!(icosphere(5).len(), 10242);
        assert_eq!(hemisphere(2).len(), 81);
    }

    #[test]
    fn nelder_mead_on_kinked_function() {
        let m = nelder_mead(|x| (x[0] - 1.0).abs() + 2.0 * (x[1] + 0.5).abs(), &[0.0, 0.0], 0.3, 1e-14, 5000, 6);
        assert!(m.value < 1e-8, "{m:?}");
    }
}
