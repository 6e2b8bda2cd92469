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

//! Planar convex machinery.
//!
//! Coordinates are named `(s, t)`: `s` is the horizontal coordinate and `t`
//! the altitude, matching the vertical projection planes used elsewhere in the
//! crate. Horizontal width is measured along `s` between two parallel lines of
//! the form `s = a·t + b`.

mod circle;
mod inscribed;
mod polygon;
pub mod sample;
mod strip;

pub use circle::{min_enclosing_circle, Circle2};
pub use inscribed::{chebyshev_halfplanes, chebyshev_inscribed, HalfPlane};
pub use polygon::{hausdorff_distance, width2, Point2, Polygon2, Width2};
pub use strip::{horizontal_width, horizontal_width_points, split_identities, SplitIdentityReport, Strip};
