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

//! File formats: JSON bodies, circles and polygons, OBJ scenes, CSV profiles
//! and SVG figures.
//!
//! All JSON written here goes through [`to_json`], which rounds every float
//! to [`SIGNIFICANT_DIGITS`] so that reports are byte-stable across runs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::convex::{Point3, Polytope3};
use crate::error::{GeomError, Result};
use crate::holding::Circle3;
use crate::optim::tangent_basis;
use crate::planar::{Circle2, Point2, Polygon2, Strip};
use crate::projection::IcebergProfile;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Vertices of the circle polyline in OBJ scenes.
pub const CIRCLE_SEGMENTS: usize = 128;

pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let r: f64 = s.parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(x) = n.as_f64() {
                    if let Some(r) = serde_json::Number::from_f64(round_sig(x, SIGNIFICANT_DIGITS)) {
                        *n = r;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with floats rounded to [`SIGNIFICANT_DIGITS`].
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| GeomError::Parse(e.to_string()))?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| GeomError::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &to_json(value)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| GeomError::Io(format!("{}: {e}", path.display())))
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| GeomError::Parse(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| GeomError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| GeomError::Parse(format!("{}: {e}", path.display())))
}

/// Faces are recomputed from the vertex list.
pub fn read_polytope(path: &Path) -> Result<Polytope3> {
    read_json(path)
}

pub fn read_circle(path: &Path) -> Result<Circle3> {
    read_json(path)
}

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    vertices: Vec<[f64; 2]>,
}

pub fn polygon_from_json(text: &str) -> Result<Polygon2> {
    let j: PolygonJson = serde_json::from_str(text).map_err(|e| GeomError::Parse(e.to_string()))?;
    if j.vertices.iter().flatten().any(|x| !x.is_finite()) {
        return Err(GeomError::InvalidInput("polygon coordinates must be finite".into()));
    }
    let pts: Vec<Point2> = j.vertices.iter().map(|v| Point2::new(v[0], v[1])).collect();
    Ok(Polygon2::hull(&pts))
}

pub fn read_polygon(path: &Path) -> Result<Polygon2> {
    let text = fs::read_to_string(path).map_err(|e| GeomError::Io(format!("{}: {e}", path.display())))?;
    polygon_from_json(&text)
}

/// Points of the circle as a closed polyline (first point not repeated).
pub fn circle_polyline(c: &Circle3, segments: usize) -> Vec<Point3> {
    let (a, b) = tangent_basis(&c.normal);
    let r = c.radius();
    (0..segments)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / segments as f64;
            c.center + (a * t.cos() + b * t.sin()) * r
        })
        .collect()
}

/// Wavefront OBJ with the body as group `body` and the circle as a closed
/// line in group `circle`.
pub fn obj_scene(k: &Polytope3, circle: Option<&Circle3>) -> String {
    let mut s = String::from("# holdcircle scene\no body\n");
    let num = |x: f64| round_sig(x, SIGNIFICANT_DIGITS);
    for v in k.vertices() {
        let _ = writeln!(s, "v {} {} {}", num(v.x), num(v.y), num(v.z));
    }
    for f in k.faces() {
        s.push('f');
        for i in &f.vertices {
            let _ = write!(s, " {}", i + 1);
        }
        s.push('\n');
    }
    if let Some(c) = circle {
        let base = k.vertices().len();
        s.push_str("o circle\n");
        let pts = circle_polyline(c, CIRCLE_SEGMENTS);
        for p in &pts {
            let _ = writeln!(s, "v {} {} {}", num(p.x), num(p.y), num(p.z));
        }
        s.push('l');
        for i in 0..=pts.len() {
            let _ = write!(s, " {}", base + i % pts.len() + 1);
        }
        s.push('\n');
    }
    s
}

pub fn profile_csv(p: &IcebergProfile) -> String {
    let mut s = String::from("theta,whA,whB,margin\n");
    let num = |x: f64| round_sig(x, SIGNIFICANT_DIGITS);
    for i in 0..p.thetas.len() {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            num(p.thetas[i]),
            num(p.wh_a[i]),
            num(p.wh_b[i]),
            num(p.wh_b[i] - p.wh_a[i])
        );
    }
    s
}

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 400.0;
const PAD: f64 = 48.0;

fn svg_open(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_W}\" height=\"{SVG_H}\" viewBox=\"0 0 {SVG_W} {SVG_H}\">\n\
         <title>{}</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        escape(title)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Both horizontal-width curves against θ ∈ [0, π).
pub fn profile_svg(p: &IcebergProfile, title: &str) -> String {
    let (lo, hi) = p
        .wh_a
        .iter()
        .chain(&p.wh_b)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let span = if hi - lo > 1e-12 { hi - lo } else { 1.0 };
    let x = |t: f64| PAD + t / std::f64::consts::PI * (SVG_W - 2.0 * PAD);
    let y = |v: f64| SVG_H - PAD - (v - lo) / span * (SVG_H - 2.0 * PAD);
    let mut s = svg_open(title);
    let _ = writeln!(
        s,
        "<g stroke=\"#888\" stroke-width=\"1\"><line x1=\"{PAD}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\"/><line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{b}\"/></g>",
        b = SVG_H - PAD,
        r = SVG_W - PAD
    );
    let _ = writeln!(
        s,
        "<g font-family=\"monospace\" font-size=\"12\"><text x=\"{PAD}\" y=\"{}\">0</text><text x=\"{}\" y=\"{}\">pi</text>\
         <text x=\"4\" y=\"{}\">{:.4}</text><text x=\"4\" y=\"{}\">{:.4}</text><text x=\"{PAD}\" y=\"24\">{}</text></g>",
        SVG_H - PAD + 16.0,
        SVG_W - PAD - 12.0,
        SVG_H - PAD + 16.0,
        SVG_H - PAD,
        lo,
        PAD,
        hi,
        escape(title)
    );
    for (vals, colour, name) in [(&p.wh_a, "#1f77b4", "w_h(A)"), (&p.wh_b, "#d62728", "w_h(B)")] {
        let pts: Vec<String> = p
            .thetas
            .iter()
            .zip(vals.iter())
            .map(|(&t, &v)| format!("{:.2},{:.2}", x(t), y(v)))
            .collect();
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\"{}\"><title>{name}</title></polyline>",
            pts.join(" ")
        );
    }
    let _ = writeln!(
        s,
        "<g font-family=\"monospace\" font-size=\"12\"><text x=\"{}\" y=\"24\" fill=\"#1f77b4\">w_h(A)</text><text x=\"{}\" y=\"40\" fill=\"#d62728\">w_h(B)</text></g>",
        SVG_W - 120.0,
        SVG_W - 120.0
    );
    s.push_str("</svg>\n");
    s
}

/// Planar figure made of polygons, circles and strips.
#[derive(Debug, Clone, Default)]
pub struct Figure {
    pub title: String,
    pub polygons: Vec<Polygon2>,
    pub circles: Vec<Circle2>,
    pub strips: Vec<Strip>,
}

impl Figure {
    fn bounds(&self) -> (Point2, Point2) {
        let mut lo = Point2::repeat(f64::INFINITY);
        let mut hi = Point2::repeat(f64::NEG_INFINITY);
        let mut grow = |p: Point2| {
            lo = lo.inf(&p);
            hi = hi.sup(&p);
        };
        for poly in &self.polygons {
            poly.vertices().iter().for_each(|v| grow(*v));
        }
        for c in &self.circles {
            grow(c.center - Point2::repeat(c.radius));
            grow(c.center + Point2::repeat(c.radius));
        }
        if !lo.x.is_finite() {
            return (Point2::new(-1.0, -1.0), Point2::new(1.0, 1.0));
        }
        (lo, hi)
    }

    /// Strips are clipped to the bounding box of the other items.
    pub fn to_svg(&self) -> String {
        let (lo, hi) = self.bounds();
        let span = (hi - lo).max().max(1e-12);
        let scale = (SVG_H - 2.0 * PAD) / span;
        let map = |p: &Point2| Point2::new(PAD + (p.x - lo.x) * scale, SVG_H - PAD - (p.y - lo.y) * scale);
        let mut s = svg_open(&self.title);
        for st in &self.strips {
            for b in [st.b1, st.b2] {
                let a = map(&Point2::new(b + st.slope * lo.y, lo.y));
                let c = map(&Point2::new(b + st.slope * hi.y, hi.y));
                let _ = writeln!(
                    s,
                    "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#2ca02c\" stroke-dasharray=\"6 4\"/>",
                    a.x, a.y, c.x, c.y
                );
            }
        }
        for poly in &self.polygons {
            let pts: Vec<String> = poly
                .vertices()
                .iter()
                .map(|v| {
                    let q = map(v);
                    format!("{:.2},{:.2}", q.x, q.y)
                })
                .collect();
            let _ = writeln!(
                s,
                "<polygon points=\"{}\" fill=\"#1f77b4\" fill-opacity=\"0.15\" stroke=\"#1f77b4\"/>",
                pts.join(" ")
            );
        }
        for c in &self.circles {
            let q = map(&c.center);
            let _ = writeln!(
                s,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>",
                q.x,
                q.y,
                c.radius * scale
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_hull;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig(1.0 / 3.0, 12), 0.333333333333);
        assert_eq!(round_sig(-2.0f64.sqrt() * 1e-7, 12), -1.41421356237e-7);
        assert_eq!(round_sig(0.0, 12), 0.0);
        let v = serde_json::json!({"a": [std::f64::consts::PI, 1], "b": {"c": 2.0f64.sqrt()}});
        let s = to_json(&v).unwrap();
        assert!(s.contains("3.14159265359"));
        assert!(s.contains("1.41421356237"));
        assert!(s.contains(": [\n    3.14159265359,\n    1\n  ]"));
    }

    #[test]
    fn polytope_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("body.json");
        let k = build_hull(&[
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(0.0, 0.0, 1.0),
        ])
        .unwrap();
        write_json(&path, &k).unwrap();
        let back = read_polytope(&path).unwrap();
        assert_eq!(back.vertices().len(), 4);
        assert_eq!(back.faces().len(), 4);
        assert!((back.volume() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn polygon_json_is_hulled() {
        let p = polygon_from_json(r#"{"vertices": [[0,0],[1,0],[0.2,0.2],[1,1],[0,1]]}"#).unwrap();
        assert_eq!(p.len(), 4);
        assert!(polygon_from_json(r#"{"points": []}"#).is_err());
    }

    #[test]
    fn obj_has_closed_circle_polyline() {
        let k = build_hull(&[
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(0.0, 0.0, 1.0),
        ])
        .unwrap();
        let c = Circle3::new(Point3::new(0.2, 0.2, 0.2), 2.0, Point3::z()).unwrap();
        let obj = obj_scene(&k, Some(&c));
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 4 + CIRCLE_SEGMENTS);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 4);
        let line = obj.lines().find(|l| l.starts_with("l ")).unwrap();
        let idx: Vec<usize> = line[2..].split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(idx.len(), CIRCLE_SEGMENTS + 1);
        assert_eq!(idx.first(), idx.last());
        for p in circle_polyline(&c, 16) {
            assert!(((p - c.center).norm() - 1.0).abs() < 1e-12);
            assert!((p - c.center).dot(&c.normal).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_rows_match_samples() {
        let p = IcebergProfile {
            thetas: vec![0.0, 1.0],
            wh_a: vec![1.0, 2.0],
            wh_b: vec![1.5, 2.5],
            margin: 0.5,
            theta_min: 0.0,
            flipped_margin: -0.5,
            theta_flipped_min: 0.0,
            orientation: crate::projection::Orientation::AsGiven,
        };
        let csv = profile_csv(&p);
        assert_eq!(csv, "theta,whA,whB,margin\n0,1,1.5,0.5\n1,2,2.5,0.5\n");
        let svg = profile_svg(&p, "test");
        assert_eq!(svg.matches("<polyline").count(), 2);
    }

    #[test]
    fn figure_svg_lists_items() {
        let fig = Figure {
            title: "section".into(),
            polygons: vec![Polygon2::hull(&[Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)])],
            circles: vec![Circle2::new(Point2::new(0.3, 0.3), 0.29)],
            strips: vec![Strip { slope: 0.0, b1: 0.0, b2: 1.0 }],
        };
        let svg = fig.to_svg();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<line").count(), 2);
    }
}
