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

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::FamilyInstance;
use crate::error::{GeomError, Result};
use crate::optim::nelder_mead;

/// Convex polytope in ℝⁿ given by its vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NdJson", into = "NdJson")]
pub struct PolytopeND {
    dim: usize,
    vertices: Vec<DVector<f64>>,
}

#[derive(Serialize, Deserialize)]
struct NdJson {
    vertices: Vec<Vec<f64>>,
}

impl TryFrom<NdJson> for PolytopeND {
    type Error = GeomError;
    fn try_from(j: NdJson) -> Result<Self> {
        PolytopeND::new(j.vertices.into_iter().map(DVector::from_vec).collect())
    }
}

impl From<PolytopeND> for NdJson {
    fn from(p: PolytopeND) -> Self {
        NdJson { vertices: p.vertices.iter().map(|v| v.iter().copied().collect()).collect() }
    }
}

impl PolytopeND {
    /// Checks that the vertices share a dimension `n ≥ 2` and span ℝⁿ affinely.
    pub fn new(vertices: Vec<DVector<f64>>) -> Result<Self> {
        let dim = vertices.first().map_or(0, |v| v.len());
        if dim < 2 || vertices.iter().any(|v| v.len() != dim || v.iter().any(|x| !x.is_finite())) {
            return Err(GeomError::InvalidInput("vertices must be finite and of one dimension >= 2".into()));
        }
        if vertices.len() <= dim {
            return Err(GeomError::DegenerateInput(format!("{} points cannot span R^{dim}", vertices.len())));
        }
        let diffs = DMatrix::from_fn(dim, vertices.len() - 1, |r, c| vertices[c + 1][r] - vertices[0][r]);
        let sv = diffs.singular_values();
        let scale = sv.max().max(1e-300);
        if sv.iter().filter(|&&s| s > 1e-10 * scale).count() < dim {
            return Err(GeomError::DegenerateInput(format!("vertices do not span R^{dim}")));
        }
        Ok(Self { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[DVector<f64>] {
        &self.vertices
    }

    /// Breadth in direction `u` (normalized internally).
    pub fn breadth(&self, u: &DVector<f64>) -> f64 {
        let u = u.normalize();
        let (lo, hi) = self
            .vertices
            .iter()
            .map(|v| v.dot(&u))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        hi - lo
    }
}

/// `C(n)` of the Steinhagen inequality.
pub fn steinhagen_constant(n: usize) -> f64 {
    let nf = n as f64;
    if n % 2 == 0 {
        1.0 / (nf - 1.0).sqrt()
    } else {
        (nf + 1.0).sqrt() / nf
    }
}

/// Vertices of the regular simplex in ℝᵐ centered at the origin, with
/// circumradius `|r|` and first vertex `(r, 0, …, 0)`.
pub fn regular_simplex(m: usize, r: f64) -> Vec<DVector<f64>> {
    let k = m + 1;
    let centroid = DVector::from_element(k, 1.0 / k as f64);
    let lifted: Vec<DVector<f64>> = (0..k).map(|i| DVector::from_fn(k, |j, _| if i == j { 1.0 } else { 0.0 }) - &centroid).collect();
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(m);
    for v in lifted.iter().take(m) {
        let mut w = v.clone();
        for b in &basis {
            w -= b * b.dot(v);
        }
        basis.push(w.normalize());
    }
    let rho = lifted[0].norm();
    lifted
        .iter()
        .map(|v| DVector::from_fn(m, |i, _| basis[i].dot(v) * r / rho))
        .collect()
}

/// Hull of `S_a × {0}` and `S_{1−n} × {−h}` in ℝⁿ, where `S_a` is the regular
/// simplex of ℝⁿ⁻¹ with first vertex `(a, 0, …, 0)`.
pub fn simplex_hull_nd(n: usize, a: f64, h: f64) -> Result<FamilyInstance<PolytopeND>> {
    if n < 3 {
        return Err(GeomError::InvalidParam("n must be >= 3".into()));
    }
    if !(a > 1.0 && a.is_finite()) || !(h > 0.0 && h.is_finite()) {
        return Err(GeomError::InvalidParam("need a > 1 and h > 0".into()));
    }
    let lift = |v: &DVector<f64>, t: f64| DVector::from_fn(n, |i, _| if i < n - 1 { v[i] } else { t });
    let mut verts: Vec<DVector<f64>> = regular_simplex(n - 1, a).iter().map(|v| lift(v, 0.0)).collect();
    verts.extend(regular_simplex(n - 1, 1.0 - n as f64).iter().map(|v| lift(v, -h)));
    let body = PolytopeND::new(verts)?;
    let mut inst = FamilyInstance::with_body("simplex-hull", &[("n", n as f64), ("a", a), ("h", h)], body);
    let nf = n as f64;
    let c = steinhagen_constant(n);
    inst.predict("side", a * (2.0 * nf / (nf - 1.0)).sqrt(), "a*sqrt(2n/(n-1))");
    inst.predict("steinhagen", c, "C(n)");
    inst.predict("w_limit", 2.0 / c, "2/C(n)");
    inst.predict(
        "holding_sphere_diameter",
        holding_sphere_diameter(n, a),
        "2a*(1+(a-1)^2/(n^2-2n))^(-1/2)",
    );
    Ok(inst)
}

/// Diameter of the holding `(n−2)`-sphere of the simplex hull.
pub fn holding_sphere_diameter(n: usize, a: f64) -> f64 {
    let nf = n as f64;
    2.0 * a / (1.0 + (a - 1.0).powi(2) / (nf * nf - 2.0 * nf)).sqrt()
}

/// Upper bound on the width: minimum breadth over random directions and the
/// normals of hyperplanes through `n` vertices, polished by Nelder–Mead from
/// the `refine` best candidates.
pub fn width_estimate_nd(p: &PolytopeND, samples: usize, refine: usize, seed: u64) -> f64 {
    let n = p.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cands: Vec<DVector<f64>> = (0..samples)
        .map(|_| DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal)))
        .filter(|u| u.norm() > 1e-12)
        .collect();
    cands.extend(facet_normals(p, 5000));
    let mut scored: Vec<(f64, DVector<f64>)> = cands.into_iter().map(|u| (p.breadth(&u), u.normalize())).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = scored.first().map_or(f64::INFINITY, |s| s.0);
    for (_, u0) in scored.iter().take(refine) {
        let m = nelder_mead(
            |x: &[f64]| {
                let u = DVector::from_column_slice(x);
                if u.norm() < 1e-9 {
                    f64::INFINITY
                } else {
                    p.breadth(&u)
                }
            },
            u0.as_slice(),
            0.05,
            1e-13,
            400 * n,
            4,
        );
        best = best.min(m.value);
    }
    best
}

/// Normals of affine hyperplanes through `n`-subsets of the vertices, at most
/// `limit` of them.
fn facet_normals(p: &PolytopeND, limit: usize) -> Vec<DVector<f64>> {
    let n = p.dim();
    let v = p.vertices();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    if v.len() < n {
        return out;
    }
    loop {
        let m = DMatrix::from_fn(n - 1, n, |r, c| v[idx[r + 1]][c] - v[idx[0]][c]);
        let svd = m.svd(false, true);
        if let Some(vt) = svd.v_t {
            if vt.nrows() == n {
                let k = svd.singular_values.len();
                let smin = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
                if k == n - 1 && smin > 1e-12 {
                    out.push(vt.row(n - 1).transpose());
                }
            }
        }
        if out.len() >= limit || !next_combination(&mut idx, v.len()) {
            break;
        }
    }
    out
}

fn next_combination(idx: &mut [usize], total: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < total - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steinhagen_closed_forms() {
        assert_eq!(steinhagen_constant(3), 2.0 / 3.0);
        assert_eq!(steinhagen_constant(4), 1.0 / 3f64.sqrt());
        assert_eq!(steinhagen_constant(5), 6f64.sqrt() / 5.0);
    }

    #[test]
    fn regular_simplex_is_regular() {
        for m in 2..6 {
            let s = regular_simplex(m, 2.0);
            assert!((s[0][0] - 2.0).abs() < 1e-12);
            let side = (&s[0] - &s[1]).norm();
            for i in 0..=m {
                assert!((s[i].norm() - 2.0).abs() < 1e-12);
                for j in 0..i {
                    assert!(((&s[i] - &s[j]).norm() - side).abs() < 1e-12);
                }
            }
            assert!((side - 2.0 * (2.0 * (m + 1) as f64 / m as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn width_of_hypercube_and_triangle() {
        let cube: Vec<DVector<f64>> =
            (0..16u32).map(|b| DVector::from_fn(4, |i, _| f64::from((b >> i) & 1))).collect();
        let w = width_estimate_nd(&PolytopeND::new(cube).unwrap(), 200, 3, 1);
        assert!(w <= 1.0 + 1e-6 && w >= 0.99);
        let tri = PolytopeND::new(regular_simplex(2, 1.0)).unwrap();
        assert!((width_estimate_nd(&tri, 200, 3, 1) - 1.5).abs() < 1e-9);
    }

    #[test]
    fn rejects_flat_input() {
        let flat = vec![
            DVector::from_vec(vec![0.0, 0.0, 0.0]),
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![0.0, 1.0, 0.0]),
            DVector::from_vec(vec![1.0, 1.0, 0.0]),
        ];
        assert!(PolytopeND::new(flat).is_err());
    }
}
