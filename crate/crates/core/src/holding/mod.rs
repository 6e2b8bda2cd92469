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

//! Holding circles: penetration tests, blocking certificates, escape search,
//! the width chain certificate and the search for small holding circles.

mod chain;
mod circle;
mod diagnostics;
mod escape;
mod intersect;
mod nearest;
mod profile;
mod report;
mod search;

pub use chain::{chain_certificate, ChainCertificate, ChainChecks, ChainValues, Section};
pub use circle::Circle3;
pub use diagnostics::{equilateral_fit, equilateral_triangle, extremality_diagnostics, Extremality};
pub use escape::{escape_search, EscapeConfig, EscapeOutcome, EscapePath, Pose};
pub use intersect::{circle_interior_intersects, sampled_depth, Penetration};
pub use profile::{
    blocked_sides, nonintersecting_edge_bound, slice_circum_profile, slice_circumcircle,
    translation_block_certificate, EdgeBound, Side, SliceCircum, SliceCircumProfile,
};
pub use report::{holding_report, HoldingConfig, HoldingReport, Verdict};
pub use search::{min_holding_circle, valley_circles, HoldingSearch, SearchConfig};
