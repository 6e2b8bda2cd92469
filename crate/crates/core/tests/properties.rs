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

use nalgebra::{Isometry3, Vector3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use holdcircle::convex::{build_hull, width3, HalfSpace, Point3, Polytope3};
use holdcircle::holding::{
    circle_interior_intersects, escape_search, holding_report, sampled_depth, Circle3, EscapeConfig, EscapeOutcome,
    HoldingConfig,
};
use holdcircle::planar::sample::{random_axis_crossing_polygon, random_disk_polygon};
use holdcircle::planar::{
    chebyshev_inscribed, horizontal_width, min_enclosing_circle, split_identities, width2, Point2, Polygon2,
};

fn cloud3(max: usize) -> impl Strategy<Value = Vec<Point3>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 5..max)
        .prop_map(|v| v.into_iter().map(|(x, y, z)| Point3::new(x, y, z)).collect())
}

fn body() -> impl Strategy<Value = Polytope3> {
    cloud3(24).prop_filter_map("flat cloud", |pts| build_hull(&pts).ok())
}

fn polygon() -> impl Strategy<Value = Polygon2> {
    any::<u64>().prop_map(|s| random_disk_polygon(&mut ChaCha8Rng::seed_from_u64(s), Point2::new(0.3, -0.2)))
}

fn unit_vector() -> impl Strategy<Value = Vector3<f64>> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("zero vector", |(x, y, z)| x * x + y * y + z * z > 1e-4)
        .prop_map(|(x, y, z)| Vector3::new(x, y, z).normalize())
}

fn rigid() -> impl Strategy<Value = Isometry3<f64>> {
    ((-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64), unit_vector(), -3.1..3.1f64)
        .prop_map(|((x, y, z), axis, angle)| Isometry3::new(Vector3::new(x, y, z), axis * angle))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn width_is_the_smallest_breadth(k in body(), u in unit_vector()) {
        let w = width3(&k).unwrap();
        prop_assert!(w.width <= k.breadth(&u) + 1e-9);
        prop_assert!((k.breadth(&w.direction) - w.width).abs() < 1e-9);
    }

    #[test]
    fn rigid_motion_preserves_width_and_volume(k in body(), iso in rigid()) {
        let moved = k.transformed(&iso);
        prop_assert!((width3(&moved).unwrap().width - width3(&k).unwrap().width).abs() < 1e-9);
        prop_assert!((moved.volume() - k.volume()).abs() < 1e-9);
        prop_assert!(moved.validate(1e-9).is_empty());
    }

    #[test]
    fn clipping_splits_the_volume(k in body(), n in unit_vector(), t in -0.5..0.5f64) {
        let hs = HalfSpace::new(n, t + n.dot(&k.vertex_centroid()));
        if let (Ok(lo), Ok(hi)) = (k.clip(&hs, 1e-12), k.clip(&hs.complement(), 1e-12)) {
            prop_assert!((lo.volume() + hi.volume() - k.volume()).abs() < 1e-9);
        }
    }

    #[test]
    fn planar_width_never_exceeds_horizontal_width(p in polygon()) {
        prop_assert!(width2(&p).width <= horizontal_width(&p).0 + 1e-12);
    }

    #[test]
    fn horizontal_width_is_shear_invariant(p in polygon(), lambda in -3.0..3.0f64) {
        let sheared = p.map(|q| Point2::new(q.x + lambda * q.y, q.y));
        prop_assert!((horizontal_width(&sheared).0 - horizontal_width(&p).0).abs() < 1e-9);
    }

    #[test]
    fn enclosing_circle_is_tight(pts in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 2..40)) {
        let pts: Vec<Point2> = pts.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
        let c = min_enclosing_circle(&pts);
        prop_assert!(pts.iter().all(|p| (p - c.center).norm() <= c.radius + 1e-12));
        prop_assume!(c.radius > 1e-3);
        prop_assert!(pts.iter().any(|p| (p - c.center).norm() > c.radius - 1e-6));
    }

    #[test]
    fn inscribed_circle_is_tight(p in polygon()) {
        let c = chebyshev_inscribed(&p).unwrap();
        let edge_distances: Vec<f64> = p
            .edges()
            .map(|(a, b)| {
                let e = b - a;
                (e.x * (c.center.y - a.y) - e.y * (c.center.x - a.x)) / e.norm()
            })
            .collect();
        prop_assert!(edge_distances.iter().all(|&d| d >= c.radius - 1e-12));
        prop_assert!(edge_distances.iter().any(|&d| d < c.radius + 1e-6));
    }

    #[test]
    fn split_identities_hold(seed in any::<u64>()) {
        let p = random_axis_crossing_polygon(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = split_identities(&p).unwrap();
        prop_assert!(r.residual_min < 1e-9 && r.residual_max < 1e-9);
    }

    #[test]
    fn width_at_most_three_inradii(p in polygon()) {
        let r = chebyshev_inscribed(&p).unwrap().radius;
        prop_assert!(width2(&p).width <= 3.0 * r + 1e-9);
    }

    #[test]
    fn intersection_matches_sampling(
        k in body(),
        c in (-1.2..1.2f64, -1.2..1.2f64, -1.2..1.2f64),
        n in unit_vector(),
        d in 0.1..4.0f64,
    ) {
        let circle = Circle3::new(Point3::new(c.0, c.1, c.2), d, n).unwrap();
        let depth = sampled_depth(&circle, &k, 10_000);
        prop_assume!(depth.abs() > 1e-3);
        prop_assert_eq!(circle_interior_intersects(&circle, &k, 1e-9).is_some(), depth > 0.0);
    }

    #[test]
    fn circle_json_round_trips(c in (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64), n in unit_vector(), d in 0.01..10.0f64) {
        let circle = Circle3::new(Point3::new(c.0, c.1, c.2), d, n).unwrap();
        let back: Circle3 = serde_json::from_str(&serde_json::to_string(&circle).unwrap()).unwrap();
        prop_assert_eq!(back.center, circle.center);
        prop_assert_eq!(back.diameter, circle.diameter);
        prop_assert!((back.normal - circle.normal).norm() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn escape_paths_never_penetrate(k in body(), n in unit_vector(), d in 0.5..3.0f64, seed in any::<u64>()) {
        let top = k.support(&n);
        let start = Circle3::new(k.vertex_centroid() + n * (top - n.dot(&k.vertex_centroid()) + 0.05), d, n).unwrap();
        prop_assume!(circle_interior_intersects(&start, &k, 1e-9).is_none());
        let cfg = EscapeConfig { budget: 4_000, seed, ..Default::default() };
        if let EscapeOutcome::Found(path) = escape_search(&k, &start, &cfg).unwrap() {
            prop_assert!(path.validate(&k, 1e-9));
            prop_assert!(path.collision_free.iter().all(|&f| f));
        }
    }

    #[test]
    fn holding_verdict_follows_evidence(k in body(), n in unit_vector(), d in 0.2..3.0f64, off in -0.3..0.3f64) {
        let c = Circle3::new(k.vertex_centroid() + n * off, d, n).unwrap();
        let cfg = HoldingConfig { escape: EscapeConfig { budget: 1_000, ..Default::default() }, ..Default::default() };
        prop_assert!(holding_report(&k, &c, &cfg).is_consistent());
    }
}
