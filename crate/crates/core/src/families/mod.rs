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

//! Constructors for the reference bodies, each bundled with the closed-form
//! quantities it is expected to exhibit.

mod nd;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use nd::{holding_sphere_diameter, regular_simplex, simplex_hull_nd, steinhagen_constant, width_estimate_nd, PolytopeND};

use crate::convex::{build_hull, Point3, Polytope3};
use crate::error::{GeomError, Result};
use crate::holding::Circle3;

/// A predicted quantity together with the formula that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub value: Quantity,
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl Quantity {
    pub fn scalar(&self) -> Option<f64> {
        match self {
            Quantity::Scalar(v) => Some(*v),
            Quantity::Vector(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyInstance<B = Polytope3> {
    pub family: String,
    pub params: BTreeMap<String, f64>,
    pub body: B,
    pub predicted: BTreeMap<String, Prediction>,
    /// Circle the construction is built around, when there is one.
    pub circle: Option<Circle3>,
}

impl<B> FamilyInstance<B> {
    fn with_body(family: &str, params: &[(&str, f64)], body: B) -> Self {
        Self {
            family: family.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            body,
            predicted: BTreeMap::new(),
            circle: None,
        }
    }

    fn predict(&mut self, name: &str, value: f64, formula: &str) {
        self.predicted.insert(name.into(), Prediction { value: Quantity::Scalar(value), formula: formula.into() });
    }

    fn predict_vec(&mut self, name: &str, value: &[f64], formula: &str) {
        self.predicted
            .insert(name.into(), Prediction { value: Quantity::Vector(value.to_vec()), formula: formula.into() });
    }

    /// Scalar prediction by name.
    pub fn value(&self, name: &str) -> Option<f64> {
        self.predicted.get(name).and_then(|p| p.value.scalar())
    }
}

/// `(z, t) ∈ ℂ × ℝ ↦ (Re z, Im z, t)` for `z = r·j^k`, `j = exp(2πi/3)`.
fn cube_root_point(r: f64, k: u32, t: f64) -> Point3 {
    let ang = 2.0 * PI * k as f64 / 3.0;
    Point3::new(r * ang.cos(), r * ang.sin(), t)
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(GeomError::InvalidParam(msg.into()))
    }
}

/// Octahedron with top triangle of circumradius `a` at height 0 and a
/// reflected triangle of circumradius 2 at height `-h`.
pub fn octahedron_iceberg(a: f64, h: f64) -> Result<FamilyInstance> {
    check(a > 1.0 && a.is_finite(), "a must be > 1")?;
    check(h > 0.0 && h.is_finite(), "h must be > 0")?;
    let mut pts: Vec<Point3> = (0..3).map(|k| cube_root_point(a, k, 0.0)).collect();
    pts.extend((0..3).map(|k| cube_root_point(-2.0, k, -h)));
    let mut inst = FamilyInstance::with_body("octahedron-iceberg", &[("a", a), ("h", h)], build_hull(&pts)?);
    let phi = ((a - 1.0) / 3f64.sqrt()).atan();
    let d = 2.0 * a * phi.cos();
    let zc = -(h * a / (2.0 * 3f64.sqrt())) * (2.0 * phi).sin();
    inst.predict("phi", phi, "atan((a-1)/sqrt(3))");
    inst.predict("d", d, "2*a*cos(phi)");
    inst.predict_vec("circle_center", &[0.0, 0.0, zc], "(0, 0, -(h*a/(2*sqrt(3)))*sin(2*phi))");
    inst.predict("d_limit_a_to_1", 2.0, "lim_{a->1} 2*a*cos(phi)");
    inst.predict("w_limit_h_to_inf", 3.0, "height of the triangle of circumradius 2");
    inst.predict("ratio_limit", 2.0 / 3.0, "2/3");
    inst.circle = Some(Circle3::horizontal(Point3::new(0.0, 0.0, zc), d));
    Ok(inst)
}

/// The octahedral iceberg with an apex `(0, 0, 1)` added above the top face.
pub fn seven_vertex_iceberg(a: f64, h: f64) -> Result<FamilyInstance> {
    let base = octahedron_iceberg(a, h)?;
    let mut pts = base.body.vertices().to_vec();
    pts.push(Point3::new(0.0, 0.0, 1.0));
    let mut inst = FamilyInstance::with_body("seven-vertex-iceberg", &[("a", a), ("h", h)], build_hull(&pts)?);
    inst.predicted = base.predicted;
    inst.predict("delta_upper", 2.0 * a, "2*a (all holding circles stay near the small circle)");
    inst.circle = base.circle;
    Ok(inst)
}

/// Points on two upper and two lower edges of the octahedral iceberg whose
/// projections form a rectangle, and the circle having `AB` and `A'B'` as
/// diameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectangleCircle {
    pub alpha: f64,
    pub beta: f64,
    pub a: Point3,
    pub a_prime: Point3,
    pub b: Point3,
    pub b_prime: Point3,
    pub circle: Circle3,
    /// `Im z_A − Im z_B'`.
    pub residual_imag: f64,
    /// `arg(z_A − z_B) − π/3`.
    pub residual_arg: f64,
}

fn rectangle_points(a: f64, h: f64, alpha: f64, beta: f64) -> [Point3; 4] {
    let j = |k: u32, r: f64| cube_root_point(r, k, 0.0);
    let za = j(0, a) * alpha + j(1, a) * (1.0 - alpha);
    let za2 = j(0, a) * alpha + j(2, a) * (1.0 - alpha);
    let zb = j(0, -2.0) * beta + j(1, -2.0) * (1.0 - beta);
    let zb2 = j(0, -2.0) * beta + j(2, -2.0) * (1.0 - beta);
    [za, za2, zb + Point3::new(0.0, 0.0, -h), zb2 + Point3::new(0.0, 0.0, -h)]
}

/// Residuals of the two rectangle conditions at `(α, β)`.
pub fn rectangle_residuals(a: f64, alpha: f64, beta: f64) -> (f64, f64) {
    let [za, _, zb, zb2] = rectangle_points(a, 0.0, alpha, beta);
    let diff = za - zb;
    (za.y - zb2.y, diff.y.atan2(diff.x) - PI / 3.0)
}

/// Solves the rectangle conditions in closed form: the imaginary-part
/// condition gives `1 − β = a(1 − α)/2`, and the argument condition then
/// reduces to `α = (3a − 2)/(4a)`.
pub fn rectangle_circle_solve(a: f64, h: f64) -> Result<RectangleCircle> {
    check(a > 1.0, "a must be > 1")?;
    check(h > 0.0, "h must be > 0")?;
    let alpha = (3.0 * a - 2.0) / (4.0 * a);
    let beta = 1.0 - a * (1.0 - alpha) / 2.0;
    if !(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0) {
        return Err(GeomError::NoSolution(format!("no rectangle for a = {a}")));
    }
    let [pa, pa2, pb, pb2] = rectangle_points(a, h, alpha, beta);
    let (ri, ra) = rectangle_residuals(a, alpha, beta);
    let center = (pa + pb) * 0.5;
    let normal = (pb - pa).cross(&(pb2 - pa2));
    let circle = Circle3::new(center, (pb - pa).norm(), normal)?;
    Ok(RectangleCircle {
        alpha,
        beta,
        a: pa,
        a_prime: pa2,
        b: pb,
        b_prime: pb2,
        circle,
        residual_imag: ri,
        residual_arg: ra,
    })
}

/// Tetrahedron with a short edge `(0, ±ε, 0)` below a long edge `(±1, 0, 1)`.
pub fn flat_tetrahedron(eps: f64) -> Result<FamilyInstance> {
    check(eps > 0.0 && eps.is_finite(), "eps must be > 0")?;
    let pts = [
        Point3::new(0.0, eps, 0.0),
        Point3::new(0.0, -eps, 0.0),
        Point3::new(1.0, 0.0, 1.0),
        Point3::new(-1.0, 0.0, 1.0),
    ];
    let mut inst = FamilyInstance::with_body("flat-tetra", &[("eps", eps)], build_hull(&pts)?);
    predict_flat(&mut inst, eps);
    Ok(inst)
}

fn predict_flat(inst: &mut FamilyInstance, eps: f64) {
    let alpha = eps.atan();
    let d = 2.0 * alpha.sin();
    inst.predict("alpha", alpha, "atan(eps)");
    inst.predict("d", d, "2*sin(alpha)");
    inst.predict("circle_altitude", d * d / 4.0, "d^2/4");
    inst.predict_vec("circle_center", &[0.0, 0.0, d * d / 4.0], "(0, 0, d^2/4)");
    inst.predict("D", 1.0 + eps * eps, "1 + eps^2");
    inst.predict_vec("cylinder_axis_point", &[0.0, 0.0, (1.0 - eps * eps) / 2.0], "(x, 0, (1 - eps^2)/2)");
    inst.predict_vec("cylinder_axis_direction", &[1.0, 0.0, 0.0], "(1, 0, 0)");
    inst.circle = Some(Circle3::horizontal(Point3::new(0.0, 0.0, d * d / 4.0), d));
}

/// The flat tetrahedron with a fifth vertex `(0, 0, −ε²)` below the short edge.
pub fn five_vertex_flat(eps: f64) -> Result<FamilyInstance> {
    check(eps > 0.0 && eps.is_finite(), "eps must be > 0")?;
    let pts = [
        Point3::new(0.0, eps, 0.0),
        Point3::new(0.0, -eps, 0.0),
        Point3::new(1.0, 0.0, 1.0),
        Point3::new(-1.0, 0.0, 1.0),
        Point3::new(0.0, 0.0, -eps * eps),
    ];
    let mut inst = FamilyInstance::with_body("five-vertex-flat", &[("eps", eps)], build_hull(&pts)?);
    predict_flat(&mut inst, eps);
    inst.predicted.remove("D");
    inst.predicted.remove("cylinder_axis_point");
    inst.predicted.remove("cylinder_axis_direction");
    Ok(inst)
}

/// Tetrahedron `A1=(−2,−1,ε), A2=(−1,0,0), A3=(2a,a,ε), A4=(a,0,0)` with `a = ε²`.
pub fn skew_tetrahedron(eps: f64) -> Result<FamilyInstance> {
    check(eps > 0.0 && eps < 0.5, "eps must lie in (0, 0.5)")?;
    let a = eps * eps;
    let pts = [
        Point3::new(-2.0, -1.0, eps),
        Point3::new(-1.0, 0.0, 0.0),
        Point3::new(2.0 * a, a, eps),
        Point3::new(a, 0.0, 0.0),
    ];
    let mut inst = FamilyInstance::with_body("skew-tetra", &[("eps", eps)], build_hull(&pts)?);
    inst.predict("d", eps, "eps");
    inst.predict_vec("circle_center", &[0.0, 0.0, eps / 2.0], "(0, 0, eps/2)");
    inst.predict_vec("circle_normal", &[1.0, 0.0, 0.0], "(1, 0, 0)");
    inst.predict_vec("crossing_a1a4", &[0.0, -a / (a + 2.0), a * eps / (a + 2.0)], "(0, -a/(a+2), a*eps/(a+2))");
    inst.predict_vec("crossing_a2a3", &[0.0, a / (2.0 * a + 1.0), eps / (2.0 * a + 1.0)], "(0, a/(2a+1), eps/(2a+1))");
    inst.circle = Some(Circle3 { center: Point3::new(0.0, 0.0, eps / 2.0), diameter: eps, normal: Point3::x() });
    Ok(inst)
}

/// Hull of `(−R,±1,0)`, `(R,0,±1)` and two unit circles (as regular `m`-gons)
/// around the x axis at `x = ±(R − 1)`.
pub fn bevelled_cylinder(r: f64, m: usize) -> Result<FamilyInstance> {
    check(r > 2.0, "R must be > 2")?;
    check(m >= 16, "m must be >= 16")?;
    let mut pts = vec![
        Point3::new(-r, -1.0, 0.0),
        Point3::new(-r, 1.0, 0.0),
        Point3::new(r, 0.0, -1.0),
        Point3::new(r, 0.0, 1.0),
    ];
    for x in [1.0 - r, r - 1.0] {
        for k in 0..m {
            let t = 2.0 * PI * k as f64 / m as f64;
            pts.push(Point3::new(x, t.cos(), t.sin()));
        }
    }
    let mut inst = FamilyInstance::with_body("bevelled-cylinder", &[("R", r), ("m", m as f64)], build_hull(&pts)?);
    inst.predict("d", 2.0 * r, "diameter of a circle with diametral segment [-R,R]x{0}x{0}");
    inst.predict("D", 2.0, "diameter of the unit circles around the x axis");
    inst.predict("d_radius_convention", r, "R (radius reading of the diametral circle)");
    inst.predict("D_radius_convention", 1.0, "1 (radius reading of the cylinder)");
    inst.predict("ratio", r, "d/D = R under either convention");
    inst.circle = Some(diametral_circle(r, PI / 4.0));
    Ok(inst)
}

/// Circle with diametral segment `[−R, R] × {0} × {0}` whose normal makes
/// angle `psi` with the y axis inside the yz plane.
pub fn diametral_circle(r: f64, psi: f64) -> Circle3 {
    Circle3 { center: Point3::zeros(), diameter: 2.0 * r, normal: Point3::new(0.0, psi.cos(), psi.sin()) }
}

/// Tetrahedron with orthogonal opposite edges `(±p/2, 0, s)` and `(0, ±q/2, 0)`
/// joined by their common perpendicular through the midpoints.
pub fn wd_tetrahedron(p: f64, q: f64, s: f64) -> Result<FamilyInstance> {
    check(p > 0.0 && q > 0.0 && s > 0.0, "p, q, s must be > 0")?;
    let pts = [
        Point3::new(p / 2.0, 0.0, s),
        Point3::new(-p / 2.0, 0.0, s),
        Point3::new(0.0, q / 2.0, 0.0),
        Point3::new(0.0, -q / 2.0, 0.0),
    ];
    let mut inst = FamilyInstance::with_body("wd-tetra", &[("p", p), ("q", q), ("s", s)], build_hull(&pts)?);
    let d = p * q / (p * p + q * q).sqrt();
    let z0 = s * q * q / (p * p + q * q);
    inst.predict("d", d, "p*q/sqrt(p^2+q^2) (circle inscribed in the projected rhombus)");
    inst.predict_vec("circle_center", &[0.0, 0.0, z0], "(0, 0, s*q^2/(p^2+q^2))");
    let w = d.min(s).min(q * s / (q * q / 4.0 + s * s).sqrt()).min(p * s / (p * p / 4.0 + s * s).sqrt());
    inst.predict("w", w, "min(d, s, qs/sqrt(q^2/4+s^2), ps/sqrt(p^2/4+s^2))");
    inst.circle = Some(Circle3::horizontal(Point3::new(0.0, 0.0, z0), d));
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::segment_distance;

    #[test]
    fn octahedron_formulas() {
        let o = octahedron_iceberg(1.38, 5.0).unwrap();
        assert_eq!(o.body.vertices().len(), 6);
        assert_eq!(o.body.faces().len(), 8);
        assert!((o.value("d").unwrap() - 2.69588).abs() < 1e-5);
        let zc = o.circle.unwrap().center.z;
        assert!((zc + 0.833863).abs() < 1e-6);
        // The predicted circle is the circumcircle of the narrowest horizontal slice.
        let v = crate::holding::valley_circles(&o.body, &Point3::z(), 200);
        assert_eq!(v.len(), 1);
        assert!((v[0].center.z - zc).abs() < 1e-6);
        assert!((v[0].diameter - o.value("d").unwrap()).abs() < 1e-9);
        assert_eq!(o.body.support(&Point3::z()), 0.0);
        assert!(octahedron_iceberg(1.0, 5.0).is_err());
        assert!(octahedron_iceberg(1.2, -1.0).is_err());
    }

    #[test]
    fn seven_vertex_apex_is_a_vertex() {
        let s = seven_vertex_iceberg(1.38, 5.0).unwrap();
        assert_eq!(s.body.vertices().len(), 7);
        assert!(s.body.vertices().iter().any(|v| (v - Point3::new(0.0, 0.0, 1.0)).norm() < 1e-15));
    }

    /// Oracle: Newton iteration on the two raw rectangle residuals.
    #[test]
    fn rectangle_closed_form_matches_root_finding() {
        let a = 1.38;
        let (mut x, mut y) = (0.5, 0.5);
        for _ in 0..50 {
            let (f0, g0) = rectangle_residuals(a, x, y);
            let hstep = 1e-7;
            let (fx, gx) = rectangle_residuals(a, x + hstep, y);
            let (fy, gy) = rectangle_residuals(a, x, y + hstep);
            let j = nalgebra::Matrix2::new((fx - f0) / hstep, (fy - f0) / hstep, (gx - g0) / hstep, (gy - g0) / hstep);
            let step = j.lu().solve(&nalgebra::Vector2::new(-f0, -g0)).unwrap();
            x += step.x;
            y += step.y;
        }
        let r = rectangle_circle_solve(a, 5.0).unwrap();
        assert!((r.alpha - x).abs() < 1e-9 && (r.beta - y).abs() < 1e-9);
        assert!(r.residual_imag.abs() < 1e-10 && r.residual_arg.abs() < 1e-10);
        assert!(((r.b - r.a).norm() - (r.b_prime - r.a_prime).norm()).abs() < 1e-12);
        assert!(rectangle_circle_solve(1.01, 5.0).unwrap().circle.diameter > 2.0 * 1.01);
        assert!(rectangle_circle_solve(7.0, 5.0).is_err());
    }

    #[test]
    fn flat_tetrahedron_edge_distance_matches_circle() {
        let f = flat_tetrahedron(0.2).unwrap();
        let d = f.value("d").unwrap();
        assert!((d - 0.392232).abs() < 1e-6);
        assert!((f.value("circle_altitude").unwrap() - 0.0384615).abs() < 1e-7);
        let (dist, _, _) = segment_distance(
            &Point3::new(0.0, 0.2, 0.0),
            &Point3::new(1.0, 0.0, 1.0),
            &Point3::new(0.0, -0.2, 0.0),
            &Point3::new(-1.0, 0.0, 1.0),
        );
        assert!((dist - d).abs() < 1e-12);
    }

    #[test]
    fn five_vertex_flat_has_five_vertices() {
        assert_eq!(five_vertex_flat(0.2).unwrap().body.vertices().len(), 5);
    }

    #[test]
    fn bevelled_cylinder_vertex_count() {
        let b = bevelled_cylinder(10.0, 64).unwrap();
        let n = b.body.vertices().len();
        assert!(n > 4 && n <= 132, "{n}");
        assert!(bevelled_cylinder(1.5, 64).is_err());
    }

    #[test]
    fn wd_tetrahedron_width_formula() {
        for (p, q, s) in [(2.0, 2.0, 1.0), (2.0, 2.0, 2.0), (1.0, 3.0, 0.7), (3.0, 1.5, 4.0)] {
            let t = wd_tetrahedron(p, q, s).unwrap();
            let w = crate::convex::width3(&t.body).unwrap().width;
            assert!((w - t.value("w").unwrap()).abs() < 1e-12, "{p} {q} {s}");
        }
    }
}
