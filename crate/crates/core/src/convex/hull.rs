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

//! Quickhull in three dimensions, followed by merging of coplanar triangles
//! into polygonal faces.

use std::collections::HashMap;

use super::polytope::{Face, Point3, Polytope3};
use crate::error::{GeomError, Result};
use crate::optim::tangent_basis;
use crate::planar::Point2;

struct Tri {
    v: [usize; 3],
    normal: Point3,
    offset: f64,
    alive: bool,
    outside: Vec<usize>,
}

struct Builder<'a> {
    pts: &'a [Point3],
    interior: Point3,
    tris: Vec<Tri>,
    edge_map: HashMap<(usize, usize), usize>,
}

impl<'a> Builder<'a> {
    fn add_tri(&mut self, a: usize, b: usize, c: usize) -> usize {
        let (pa, pb, pc) = (self.pts[a], self.pts[b], self.pts[c]);
        let mut normal = (pb - pa).cross(&(pc - pa));
        let mut v = [a, b, c];
        if normal.dot(&(self.interior - pa)) > 0.0 {
            normal = -normal;
            v = [a, c, b];
        }
        let normal = normal.normalize();
        let id = self.tris.len();
        for k in 0..3 {
            self.edge_map.insert((v[k], v[(k + 1) % 3]), id);
        }
        self.tris.push(Tri { v, normal, offset: normal.dot(&pa), alive: true, outside: Vec::new() });
        id
    }

    fn dist(&self, t: usize, p: usize) -> f64 {
        self.tris[t].normal.dot(&self.pts[p]) - self.tris[t].offset
    }

    fn assign(&mut self, candidates: &[usize], points: impl IntoIterator<Item = usize>, eps: f64) {
        for p in points {
            let best = candidates
                .iter()
                .map(|&t| (t, self.dist(t, p)))
                .filter(|&(_, d)| d > eps)
                .max_by(|a, b| a.1.total_cmp(&b.1));
            if let Some((t, _)) = best {
                self.tris[t].outside.push(p);
            }
        }
    }
}

/// Convex hull of a point cloud as a polytope with polygonal faces and a
/// minimal vertex set. Coordinates are copied from the input unchanged.
pub fn build_hull(points: &[Point3]) -> Result<Polytope3> {
    if points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(GeomError::InvalidInput("non-finite coordinate".into()));
    }
    if points.len() < 4 {
        return Err(GeomError::DegenerateInput(format!("{} points cannot span a solid", points.len())));
    }
    let centroid = points.iter().sum::<Point3>() / points.len() as f64;
    let scale = points.iter().map(|p| (p - centroid).norm()).fold(0.0, f64::max).max(1.0);
    let eps = 1e-12 * scale;
    let degen = 1e-10 * scale;

    // Initial simplex from extreme points.
    let i0 = (0..points.len())
        .min_by(|&a, &b| {
            let (p, q) = (points[a], points[b]);
            p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)).then(p.z.total_cmp(&q.z))
        })
        .unwrap();
    let argmax = |f: &dyn Fn(&Point3) -> f64| {
        (0..points.len()).max_by(|&a, &b| f(&points[a]).total_cmp(&f(&points[b]))).unwrap()
    };
    let i1 = argmax(&|p| (p - points[i0]).norm());
    let dir = (points[i1] - points[i0]).normalize();
    let line_dist = |p: &Point3| {
        let d = p - points[i0];
        (d - dir * d.dot(&dir)).norm()
    };
    let i2 = argmax(&line_dist);
    if line_dist(&points[i2]) <= degen {
        return Err(GeomError::DegenerateInput("points are collinear".into()));
    }
    let pn = (points[i1] - points[i0]).cross(&(points[i2] - points[i0])).normalize();
    let plane_dist = |p: &Point3| (p - points[i0]).dot(&pn).abs();
    let i3 = argmax(&plane_dist);
    if plane_dist(&points[i3]) <= degen {
        return Err(GeomError::DegenerateInput("points are coplanar".into()));
    }

    let simplex = [i0, i1, i2, i3];
    let interior = simplex.iter().map(|&i| points[i]).sum::<Point3>() / 4.0;
    let mut b = Builder { pts: points, interior, tris: Vec::new(), edge_map: HashMap::new() };
    let first: Vec<usize> = vec![
        b.add_tri(i0, i1, i2),
        b.add_tri(i0, i1, i3),
        b.add_tri(i0, i2, i3),
        b.add_tri(i1, i2, i3),
    ];
    let rest: Vec<usize> = (0..points.len()).filter(|i| !simplex.contains(i)).collect();
    b.assign(&first, rest, eps);

    let mut guard = 0usize;
    while let Some(seed) = (0..b.tris.len()).find(|&t| b.tris[t].alive && !b.tris[t].outside.is_empty()) {
        guard += 1;
        if guard > 16 * points.len() + 64 {
            return Err(GeomError::DegenerateInput("hull construction did not converge".into()));
        }
        let apex = *b.tris[seed]
            .outside
            .iter()
            .max_by(|&&p, &&q| b.dist(seed, p).total_cmp(&b.dist(seed, q)))
            .unwrap();

        // Flood the visible region from the seed face and record its horizon.
        let mut visible = vec![seed];
        let mut state: HashMap<usize, bool> = HashMap::from([(seed, true)]);
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        let mut k = 0;
        while k < visible.len() {
            let t = visible[k];
            k += 1;
            let v = b.tris[t].v;
            for e in 0..3 {
                let (p, q) = (v[e], v[(e + 1) % 3]);
                let nb = b.edge_map[&(q, p)];
                match state.get(&nb) {
                    Some(true) => {}
                    Some(false) => horizon.push((p, q)),
                    None => {
                        let vis = b.dist(nb, apex) > eps;
                        state.insert(nb, vis);
                        if vis {
                            visible.push(nb);
                        } else {
                            horizon.push((p, q));
                        }
                    }
                }
            }
        }

        let mut orphans: Vec<usize> = Vec::new();
        for &t in &visible {
            b.tris[t].alive = false;
            orphans.append(&mut b.tris[t].outside);
            let v = b.tris[t].v;
            for e in 0..3 {
                b.edge_map.remove(&(v[e], v[(e + 1) % 3]));
            }
        }
        orphans.retain(|&p| p != apex);
        let new: Vec<usize> = horizon.iter().map(|&(p, q)| b.add_tri(p, q, apex)).collect();
        b.assign(&new, orphans, eps);
    }

    merge_faces(points, &b, scale)
}

fn merge_faces(points: &[Point3], b: &Builder, scale: f64) -> Result<Polytope3> {
    let alive: Vec<usize> = (0..b.tris.len()).filter(|&t| b.tris[t].alive).collect();
    let index: HashMap<usize, usize> = alive.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut parent: Vec<usize> = (0..alive.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let merge_tol = 1e-10 * scale;
    for (i, &t) in alive.iter().enumerate() {
        let v = b.tris[t].v;
        for e in 0..3 {
            let (p, q) = (v[e], v[(e + 1) % 3]);
            let g = b.edge_map[&(q, p)];
            let opp_g = b.tris[g].v.iter().copied().find(|&x| x != p && x != q).unwrap();
            let opp_t = v[(e + 2) % 3];
            let coplanar = b.tris[t].normal.dot(&b.tris[g].normal) > 0.0
                && b.dist(t, opp_g).abs() <= merge_tol
                && b.dist(g, opp_t).abs() <= merge_tol;
            if coplanar {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, index[&g]));
                parent[ri] = rj;
            }
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..alive.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(alive[i]);
    }
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();

    let mut loops: Vec<(Point3, Vec<usize>)> = Vec::new();
    for r in roots {
        let tris = &groups[&r];
        let mut acc = Point3::zeros();
        let mut verts: Vec<usize> = Vec::new();
        for &t in tris {
            let [x, y, z] = b.tris[t].v;
            acc += (points[y] - points[x]).cross(&(points[z] - points[x]));
            verts.extend([x, y, z]);
        }
        verts.sort_unstable();
        verts.dedup();
        let normal = acc.normalize();
        let (u, v) = tangent_basis(&normal);
        let loop_ = hull2_indices(&verts.iter().map(|&i| (Point2::new(points[i].dot(&u), points[i].dot(&v)), i)).collect::<Vec<_>>());
        loops.push((normal, loop_));
    }

    // A genuine vertex lies on at least three faces; anything else sits on an
    // edge or inside a face.
    let mut count: HashMap<usize, usize> = HashMap::new();
    for (_, l) in &loops {
        for &i in l {
            *count.entry(i).or_default() += 1;
        }
    }
    let mut keep: Vec<usize> = count.iter().filter(|(_, &c)| c >= 3).map(|(&i, _)| i).collect();
    keep.sort_unstable();
    let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let vertices: Vec<Point3> = keep.iter().map(|&i| points[i]).collect();
    let faces: Vec<Face> = loops
        .into_iter()
        .map(|(normal, l)| {
            let vs: Vec<usize> = l.iter().filter_map(|i| remap.get(i).copied()).collect();
            let offset = vs.iter().map(|&i| normal.dot(&vertices[i])).fold(f64::NEG_INFINITY, f64::max);
            Face { normal, offset, vertices: vs }
        })
        .collect();
    if faces.iter().any(|f| f.vertices.len() < 3) {
        return Err(GeomError::DegenerateInput("hull produced a degenerate face".into()));
    }
    Ok(Polytope3::from_parts(vertices, faces))
}

/// Counterclockwise strict convex hull of labelled planar points, returning labels.
fn hull2_indices(pts: &[(Point2, usize)]) -> Vec<usize> {
    let mut p: Vec<(Point2, usize)> = pts.to_vec();
    p.sort_by(|a, b| a.0.x.total_cmp(&b.0.x).then(a.0.y.total_cmp(&b.0.y)));
    let scale = p.iter().map(|(q, _)| q.x.abs().max(q.y.abs())).fold(1.0, f64::max);
    let eps = 1e-13 * scale * scale;
    let turn = |o: &Point2, a: &Point2, c: &Point2| (a - o).x * (c - o).y - (a - o).y * (c - o).x;
    let chain = |iter: &mut dyn Iterator<Item = &(Point2, usize)>| {
        let mut h: Vec<(Point2, usize)> = Vec::new();
        for q in iter {
            while h.len() >= 2 && turn(&h[h.len() - 2].0, &h[h.len() - 1].0, &q.0) <= eps {
                h.pop();
            }
            h.push(*q);
        }
        h.pop();
        h
    };
    let mut lower = chain(&mut p.iter());
    let upper = chain(&mut p.iter().rev());
    lower.extend(upper);
    lower.into_iter().map(|(_, i)| i).collect()
}
