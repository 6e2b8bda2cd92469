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

//! Convex bodies held by circles.
//!
//! The crate builds convex polytopes and measures the quantities that govern
//! whether a circle can hold them: width, circumscribing cylinder, horizontal
//! widths of vertical projections, slice circumcircles, and certificates that
//! a given circle is (or is not) trapped around the body.

pub mod analysis;
pub mod convex;
pub mod error;
pub mod families;
pub mod holding;
pub mod io;
pub mod optim;
pub mod planar;
pub mod projection;
pub mod tol;
pub mod verify;

pub use error::{GeomError, Result};
