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

//! One-shot analysis of a body: width, circumscribing cylinder, holding
//! circle (given or searched), iceberg profile and the resulting ratios.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::convex::{min_cylinder, width3, CylinderConfig, CylinderResult, HalfSpace, Polytope3, WidthResult};
use crate::error::Result;
use crate::holding::{holding_report, min_holding_circle, Circle3, HoldingReport, SearchConfig, Verdict};
use crate::projection::{iceberg_profile, IcebergProfile, Orientation};
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub search: SearchConfig,
    pub cylinder: CylinderConfig,
    pub theta_samples: usize,
    /// Search for a holding circle when none is given.
    pub search_circle: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self { search: SearchConfig::default(), cylinder: CylinderConfig::default(), theta_samples: 720, search_circle: true }
    }
}

impl AnalysisConfig {
    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.search.holding.tol = tol;
        self
    }

    pub fn with_escape(mut self, budget: usize, seed: u64) -> Self {
        self.search.holding.escape.budget = budget;
        self.search.holding.escape.seed = seed;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CircleSource {
    Given,
    Searched,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IcebergSummary {
    pub samples: usize,
    pub orientation: Orientation,
    pub margin: f64,
    pub theta_min: f64,
    pub flipped_margin: f64,
    pub theta_flipped_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub lower_bound: Option<f64>,
    pub certified_diameters: Vec<f64>,
    pub delta_estimate: f64,
    pub candidates_checked: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ratios {
    pub d_over_w: Option<f64>,
    pub d_over_cylinder: Option<f64>,
    pub delta_over_w: Option<f64>,
    pub delta_over_cylinder: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub tolerances: Tolerances,
    pub seed: u64,
    pub budget: usize,
    pub theta_samples: usize,
    pub search_grid_level: u32,
    pub cylinder_grid_level: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub body_id: String,
    pub vertices: usize,
    pub faces: usize,
    pub width: WidthResult,
    pub cylinder: CylinderResult,
    pub circle_source: CircleSource,
    pub d_hat: Option<f64>,
    pub circle: Option<Circle3>,
    pub search: Option<SearchSummary>,
    pub search_error: Option<String>,
    pub iceberg: Option<IcebergSummary>,
    pub iceberg_error: Option<String>,
    pub holding: Option<HoldingReport>,
    pub ratios: Ratios,
    pub settings: RunSettings,
}

/// Report plus the full θ profile, which is kept out of the JSON report.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: AnalysisReport,
    pub profile: Option<IcebergProfile>,
}

impl AnalysisReport {
    pub fn verdict(&self) -> Option<Verdict> {
        self.holding.as_ref().map(|h| h.verdict)
    }

    /// Plain-text summary for terminals.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "body            {} ({} vertices, {} faces)", self.body_id, self.vertices, self.faces);
        let _ = writeln!(s, "width w         {:.9}", self.width.width);
        let _ = writeln!(s, "cylinder D      {:.9}", self.cylinder.diameter);
        match (&self.circle, self.d_hat) {
            (Some(c), Some(d)) => {
                let _ = writeln!(
                    s,
                    "circle ({:?})  d = {:.9}, center ({:.6}, {:.6}, {:.6}), normal ({:.6}, {:.6}, {:.6})",
                    self.circle_source, d, c.center.x, c.center.y, c.center.z, c.normal.x, c.normal.y, c.normal.z
                );
            }
            _ => {
                let _ = writeln!(s, "circle          none");
            }
        }
        if let Some(e) = &self.search_error {
            let _ = writeln!(s, "search          {e}");
        }
        if let Some(h) = &self.holding {
            let _ = writeln!(
                s,
                "holding         {:?} (non-penetrating {}, blocked above {}, below {})",
                h.verdict, h.non_penetration, h.blocked_above, h.blocked_below
            );
        }
        if let Some(i) = &self.iceberg {
            let _ = writeln!(s, "iceberg         {:?}, margin {:.6e}", i.orientation, i.margin);
        }
        let r = &self.ratios;
        if let (Some(a), Some(b)) = (r.d_over_w, r.d_over_cylinder) {
            let _ = writeln!(s, "ratios          d/w = {a:.6}, d/D = {b:.6}");
        }
        s
    }
}

fn ratio(num: Option<f64>, den: f64) -> Option<f64> {
    num.map(|n| n / den)
}

/// Runs the full analysis. A missing circle is searched for when
/// `cfg.search_circle` is set; search failure is recorded, not raised.
pub fn analyze(body_id: &str, k: &Polytope3, circle: Option<Circle3>, cfg: &AnalysisConfig) -> Result<Analysis> {
    let width = width3(k)?;
    let cylinder = min_cylinder(k, &cfg.cylinder);
    let mut search = None;
    let mut search_error = None;
    let (circle_source, circle, holding) = match circle {
        Some(c) => (CircleSource::Given, Some(c), Some(holding_report(k, &c, &cfg.search.holding))),
        None if cfg.search_circle => match min_holding_circle(k, &cfg.search) {
            Ok(found) => {
                search = Some(SearchSummary {
                    lower_bound: found.lower_bound,
                    certified_diameters: found.certified_diameters.clone(),
                    delta_estimate: found.delta_estimate,
                    candidates_checked: found.candidates_checked,
                });
                (CircleSource::Searched, Some(found.circle), Some(found.report))
            }
            Err(e) => {
                search_error = Some(e.to_string());
                (CircleSource::None, None, None)
            }
        },
        None => (CircleSource::None, None, None),
    };

    let mut profile = None;
    let mut iceberg = None;
    let mut iceberg_error = None;
    if let Some(c) = &circle {
        match iceberg_profile(k, &HalfSpace::through(c.normal, &c.center), cfg.theta_samples) {
            Ok(p) => {
                iceberg = Some(IcebergSummary {
                    samples: cfg.theta_samples,
                    orientation: p.orientation,
                    margin: p.margin,
                    theta_min: p.theta_min,
                    flipped_margin: p.flipped_margin,
                    theta_flipped_min: p.theta_flipped_min,
                });
                profile = Some(p);
            }
            Err(e) => iceberg_error = Some(e.to_string()),
        }
    }

    let d_hat = circle.map(|c| c.diameter);
    let delta = search.as_ref().map(|s| s.delta_estimate);
    let ratios = Ratios {
        d_over_w: ratio(d_hat, width.width),
        d_over_cylinder: ratio(d_hat, cylinder.diameter),
        delta_over_w: ratio(delta, width.width),
        delta_over_cylinder: ratio(delta, cylinder.diameter),
    };
    let escape = cfg.search.holding.escape;
    let report = AnalysisReport {
        body_id: body_id.to_string(),
        vertices: k.vertices().len(),
        faces: k.faces().len(),
        width,
        cylinder,
        circle_source,
        d_hat,
        circle,
        search,
        search_error,
        iceberg,
        iceberg_error,
        holding,
        ratios,
        settings: RunSettings {
            tolerances: cfg.search.holding.tol,
            seed: escape.seed,
            budget: escape.budget,
            theta_samples: cfg.theta_samples,
            search_grid_level: cfg.search.grid_level,
            cylinder_grid_level: cfg.cylinder.grid_level,
        },
    };
    Ok(Analysis { report, profile })
}
