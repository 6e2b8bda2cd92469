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

//! Incremental nearest-neighbour index: a logarithmic family of static
//! kd-trees whose sizes are distinct powers of two.

const DIM: usize = 6;

pub(crate) type Key = [f64; DIM];

struct Tree {
    /// Indices in kd order: node `lo..hi` has its split element at the middle.
    order: Vec<usize>,
}

impl Tree {
    fn build(points: &[Key], mut ids: Vec<usize>) -> Self {
        fn rec(points: &[Key], ids: &mut [usize], depth: usize) {
            if ids.len() <= 1 {
                return;
            }
            let axis = depth % DIM;
            let mid = ids.len() / 2;
            ids.select_nth_unstable_by(mid, |&a, &b| points[a][axis].total_cmp(&points[b][axis]));
            let (left, right) = ids.split_at_mut(mid);
            rec(points, left, depth + 1);
            rec(points, &mut right[1..], depth + 1);
        }
        rec(points, &mut ids, 0);
        Self { order: ids }
    }

    fn nearest(&self, points: &[Key], q: &Key, best: &mut (f64, usize)) {
        fn rec(points: &[Key], ids: &[usize], depth: usize, q: &Key, best: &mut (f64, usize)) {
            if ids.is_empty() {
                return;
            }
            let mid = ids.len() / 2;
            let id = ids[mid];
            let d = dist2(&points[id], q);
            if d < best.0 {
                *best = (d, id);
            }
            let axis = depth % DIM;
            let diff = q[axis] - points[id][axis];
            let (near, far) = if diff < 0.0 { (&ids[..mid], &ids[mid + 1..]) } else { (&ids[mid + 1..], &ids[..mid]) };
            rec(points, near, depth + 1, q, best);
            if diff * diff < best.0 {
                rec(points, far, depth + 1, q, best);
            }
        }
        rec(points, &self.order, 0, q, best);
    }
}

fn dist2(a: &Key, b: &Key) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[derive(Default)]
pub(crate) struct NearestIndex {
    points: Vec<Key>,
    trees: Vec<Tree>,
}

impl NearestIndex {
    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn insert(&mut self, p: Key) -> usize {
        let id = self.points.len();
        self.points.push(p);
        let mut ids = vec![id];
        while let Some(t) = self.trees.last() {
            if t.order.len() > ids.len() {
                break;
            }
            ids.extend(self.trees.pop().map(|t| t.order).unwrap_or_default());
        }
        self.trees.push(Tree::build(&self.points, ids));
        id
    }

    pub fn nearest(&self, q: &Key) -> Option<usize> {
        let mut best = (f64::INFINITY, usize::MAX);
        for t in &self.trees {
            t.nearest(&self.points, q, &mut best);
        }
        (best.1 != usize::MAX).then_some(best.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut idx = NearestIndex::default();
        let mut pts = Vec::new();
        for i in 0..700 {
            let p: Key = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            assert_eq!(idx.insert(p), i);
            pts.push(p);
            let q: Key = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let brute = (0..pts.len()).min_by(|&a, &b| dist2(&pts[a], &q).total_cmp(&dist2(&pts[b], &q))).unwrap();
            assert_eq!(idx.nearest(&q), Some(brute));
        }
        assert_eq!(idx.len(), 700);
    }
}
