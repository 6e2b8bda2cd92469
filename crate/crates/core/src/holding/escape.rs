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

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitBall, UnitSphere};
use serde::{Deserialize, Serialize};

use super::nearest::{Key, NearestIndex};
use super::{circle_interior_intersects, Circle3};
use crate::convex::{Point3, Polytope3};
use crate::error::{GeomError, Result};
use crate::tol::TAU_GEOM;

/// Position of a circle of fixed diameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub center: Point3,
    pub normal: Point3,
}

impl Pose {
    pub fn circle(&self, diameter: f64) -> Circle3 {
        Circle3 { center: self.center, diameter, normal: self.normal }
    }

    /// `|Δcenter| + radius·∠(normals)`, a bound on how far any circle point moves.
    pub fn distance(&self, other: &Pose, radius: f64) -> f64 {
        (other.center - self.center).norm() + radius * self.normal.angle(&other.normal)
    }

    fn key(&self, radius: f64) -> Key {
        let n = self.normal * radius;
        [self.center.x, self.center.y, self.center.z, n.x, n.y, n.z]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EscapeConfig {
    /// Number of poses that may be collision-checked.
    pub budget: usize,
    pub seed: u64,
    /// Largest pose distance between consecutive poses; `None` picks
    /// `min(R/50, d/8)` for body circumradius `R` and circle diameter `d`.
    pub step: Option<f64>,
    /// Center distance from the body centroid that counts as escaped; `None`
    /// picks `10·R`.
    pub escape_radius: Option<f64>,
    pub goal_bias: f64,
    /// Intermediate poses checked between consecutive tree poses; a motion
    /// can only pass unnoticed through a region it would enter by less than
    /// half of `step / substeps`.
    pub substeps: usize,
    pub tol: f64,
}

impl Default for EscapeConfig {
    fn default() -> Self {
        Self { budget: 100_000, seed: 0, step: None, escape_radius: None, goal_bias: 0.1, substeps: 16, tol: TAU_GEOM }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EscapePath {
    pub diameter: f64,
    pub step: f64,
    pub poses: Vec<Pose>,
    pub collision_free: Vec<bool>,
}

impl EscapePath {
    /// Re-checks every pose and every step length.
    pub fn validate(&self, k: &Polytope3, tol: f64) -> bool {
        let r = 0.5 * self.diameter;
        self.poses.iter().all(|p| circle_interior_intersects(&p.circle(self.diameter), k, tol).is_none())
            && self.poses.windows(2).all(|w| w[0].distance(&w[1], r) <= self.step * (1.0 + 1e-9))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EscapeOutcome {
    Found(EscapePath),
    NotFoundWithinBudget { poses_checked: usize, tree_size: usize },
}

impl EscapeOutcome {
    pub fn found(&self) -> bool {
        matches!(self, EscapeOutcome::Found(_))
    }
}

fn rotate_toward(a: &Point3, b: &Point3, frac: f64) -> Point3 {
    let angle = a.angle(b);
    if angle < 1e-15 {
        return *b;
    }
    let mut axis = a.cross(b);
    if axis.norm() < 1e-12 {
        axis = crate::optim::tangent_basis(a).0;
    }
    let rot = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle * frac);
    (rot * a).normalize()
}

fn steer(from: &Pose, to: &Pose, radius: f64, step: f64) -> (Pose, bool) {
    let dist = from.distance(to, radius);
    if dist <= step {
        return (*to, true);
    }
    let f = step / dist;
    let center = from.center + (to.center - from.center) * f;
    (Pose { center, normal: rotate_toward(&from.normal, &to.normal, f) }, false)
}

/// Rapidly-exploring random tree over circle poses (three translations and
/// two rotations; the diameter is fixed). Each tree extension advances by at
/// most one step and is kept only if the new pose does not penetrate `k`.
pub fn escape_search(k: &Polytope3, start: &Circle3, cfg: &EscapeConfig) -> Result<EscapeOutcome> {
    if circle_interior_intersects(start, k, cfg.tol).is_some() {
        return Err(GeomError::InvalidStart);
    }
    let d = start.diameter;
    let r = 0.5 * d;
    let body_r = k.radius();
    let step = cfg.step.unwrap_or((body_r / 50.0).min(d / 8.0));
    let escape_r = cfg.escape_radius.unwrap_or(10.0 * body_r);
    let centroid = k.vertex_centroid();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let root = Pose { center: start.center, normal: start.normal };
    let mut nodes: Vec<(Pose, usize)> = vec![(root, usize::MAX)];
    let mut index = NearestIndex::default();
    index.insert(root.key(r));
    if (root.center - centroid).norm() >= escape_r {
        return Ok(EscapeOutcome::Found(trace(&nodes, 0, d, step)));
    }

    let mut checked = 0usize;
    while checked < cfg.budget {
        let target = if rng.random::<f64>() < cfg.goal_bias {
            let u: [f64; 3] = UnitSphere.sample(&mut rng);
            Pose { center: centroid + Point3::from(u) * (1.2 * escape_r), normal: start.normal }
        } else {
            let b: [f64; 3] = UnitBall.sample(&mut rng);
            let u: [f64; 3] = UnitSphere.sample(&mut rng);
            Pose { center: centroid + Point3::from(b) * (1.2 * escape_r), normal: Point3::from(u) }
        };
        let mut cur = index.nearest(&target.key(r)).unwrap_or(0);
        let mut first = true;
        loop {
            let (mut next, mut reached) = steer(&nodes[cur].0, &target, r, step);
            checked += 1;
            let mut free = motion_free(k, &nodes[cur].0, &next, d, cfg);
            // Shorter retries let the tree creep along contacts.
            let mut s = step;
            while !free && first && s > step / 8.0 && checked < cfg.budget {
                s *= 0.5;
                (next, reached) = steer(&nodes[cur].0, &target, r, s);
                checked += 1;
                free = motion_free(k, &nodes[cur].0, &next, d, cfg);
            }
            if !free {
                break;
            }
            first = false;
            nodes.push((next, cur));
            cur = index.insert(next.key(r));
            if (next.center - centroid).norm() >= escape_r {
                let path = trace(&nodes, cur, d, step);
                let ok = path.validate(k, cfg.tol);
                debug_assert!(ok);
                return Ok(EscapeOutcome::Found(path));
            }
            if reached || checked >= cfg.budget {
                break;
            }
        }
    }
    Ok(EscapeOutcome::NotFoundWithinBudget { poses_checked: checked, tree_size: nodes.len() })
}

/// Checks the end pose first, then the interior poses of the motion.
fn motion_free(k: &Polytope3, from: &Pose, to: &Pose, diameter: f64, cfg: &EscapeConfig) -> bool {
    if circle_interior_intersects(&to.circle(diameter), k, cfg.tol).is_some() {
        return false;
    }
    let m = cfg.substeps.max(1);
    (1..m).all(|i| {
        let f = i as f64 / m as f64;
        let p = Pose {
            center: from.center + (to.center - from.center) * f,
            normal: rotate_toward(&from.normal, &to.normal, f),
        };
        circle_interior_intersects(&p.circle(diameter), k, cfg.tol).is_none()
    })
}

fn trace(nodes: &[(Pose, usize)], mut i: usize, diameter: f64, step: f64) -> EscapePath {
    let mut poses = Vec::new();
    while i != usize::MAX {
        poses.push(nodes[i].0);
        i = nodes[i].1;
    }
    poses.reverse();
    let collision_free = vec![true; poses.len()];
    EscapePath { diameter, step, poses, collision_free }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_hull;
    use crate::families::{flat_tetrahedron, octahedron_iceberg};

    fn cube() -> Polytope3 {
        let pts: Vec<Point3> = (0..8)
            .map(|i| Point3::new([-1.0, 1.0][i & 1], [-1.0, 1.0][(i >> 1) & 1], [-1.0, 1.0][(i >> 2) & 1]))
            .collect();
        build_hull(&pts).unwrap()
    }

    #[test]
    fn hovering_circle_escapes() {
        let o = octahedron_iceberg(1.38, 5.0).unwrap();
        let c = Circle3::horizontal(Point3::new(0.0, 0.0, 1.0), 1.0);
        let cfg = EscapeConfig { budget: 20_000, ..Default::default() };
        match escape_search(&o.body, &c, &cfg).unwrap() {
            EscapeOutcome::Found(p) => assert!(p.validate(&o.body, 1e-9)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn big_equatorial_circle_escapes_from_cube() {
        let c = Circle3::horizontal(Point3::zeros(), 10.0);
        let out = escape_search(&cube(), &c, &EscapeConfig { budget: 20_000, ..Default::default() }).unwrap();
        assert!(out.found());
    }

    #[test]
    fn penetrating_start_is_rejected() {
        let c = Circle3::horizontal(Point3::zeros(), 1.0);
        assert!(matches!(escape_search(&cube(), &c, &EscapeConfig::default()), Err(GeomError::InvalidStart)));
    }

    #[test]
    fn flat_tetrahedron_circle_is_not_released() {
        let f = flat_tetrahedron(0.2).unwrap();
        let cfg = EscapeConfig { budget: 20_000, seed: 5, ..Default::default() };
        let out = escape_search(&f.body, &f.circle.unwrap(), &cfg).unwrap();
        assert!(!out.found(), "{out:?}");
        let again = escape_search(&f.body, &f.circle.unwrap(), &cfg).unwrap();
        assert_eq!(out, again);
    }
}
