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

//! Numerical tolerances shared by all modules.

use serde::{Deserialize, Serialize};

/// Default tolerance for geometric predicates (coplanarity, containment, penetration depth).
pub const TAU_GEOM: f64 = 1e-9;

/// Default convergence tolerance for the local optimizers.
pub const TAU_OPT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub geom: f64,
    pub opt: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { geom: TAU_GEOM, opt: TAU_OPT }
    }
}
