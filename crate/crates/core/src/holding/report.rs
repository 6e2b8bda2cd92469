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

use serde::{Deserialize, Serialize};

use super::chain::{chain_certificate, ChainCertificate};
use super::escape::{escape_search, EscapeConfig, EscapeOutcome};
use super::intersect::{circle_interior_intersects, Penetration};
use super::profile::{nonintersecting_edge_bound, translation_block_certificate};
use super::Circle3;
use crate::convex::Polytope3;
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoldingConfig {
    pub escape: EscapeConfig,
    pub n_heights: usize,
    pub tol: Tolerances,
    pub with_chain: bool,
}

impl Default for HoldingConfig {
    fn default() -> Self {
        Self { escape: EscapeConfig::default(), n_heights: 200, tol: Tolerances::default(), with_chain: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Non-penetrating, blocked on both sides, and no escape within budget.
    /// This is evidence, not a proof.
    CertifiedHoldingEvidence,
    EscapeFound,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoldingReport {
    pub circle: Circle3,
    pub non_penetration: bool,
    pub penetration: Option<Penetration>,
    pub blocked_above: bool,
    pub blocked_below: bool,
    pub edge_lower_bound: Option<f64>,
    /// `None` when the search could not start from a penetrating pose.
    pub escape: Option<EscapeOutcome>,
    pub chain: Option<ChainCertificate>,
    pub chain_error: Option<String>,
    pub verdict: Verdict,
}

impl HoldingReport {
    fn verdict_of(non_pen: bool, above: bool, below: bool, escape: Option<&EscapeOutcome>) -> Verdict {
        match escape {
            Some(EscapeOutcome::Found(_)) => Verdict::EscapeFound,
            Some(EscapeOutcome::NotFoundWithinBudget { .. }) if non_pen && above && below => {
                Verdict::CertifiedHoldingEvidence
            }
            _ => Verdict::Inconclusive,
        }
    }

    /// Whether the verdict agrees with the recorded evidence.
    pub fn is_consistent(&self) -> bool {
        self.verdict
            == Self::verdict_of(self.non_penetration, self.blocked_above, self.blocked_below, self.escape.as_ref())
    }
}

/// Runs every certificate for `c` around `k`.
pub fn holding_report(k: &Polytope3, c: &Circle3, cfg: &HoldingConfig) -> HoldingReport {
    let penetration = circle_interior_intersects(c, k, cfg.tol.geom);
    let non_penetration = penetration.is_none();
    let (blocked_above, blocked_below) = translation_block_certificate(k, c, cfg.n_heights, cfg.tol.opt);
    let edge_lower_bound = nonintersecting_edge_bound(k).map(|b| b.distance);
    let escape_cfg = EscapeConfig { tol: cfg.tol.geom, ..cfg.escape };
    let escape = if non_penetration { escape_search(k, c, &escape_cfg).ok() } else { None };
    let (chain, chain_error) = if cfg.with_chain && non_penetration && blocked_above {
        match chain_certificate(k, c) {
            Ok(cert) => (Some(cert), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let verdict = HoldingReport::verdict_of(non_penetration, blocked_above, blocked_below, escape.as_ref());
    HoldingReport {
        circle: *c,
        non_penetration,
        penetration,
        blocked_above,
        blocked_below,
        edge_lower_bound,
        escape,
        chain,
        chain_error,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::{build_hull, Point3};
    use crate::families::octahedron_iceberg;

    fn fast() -> HoldingConfig {
        HoldingConfig { escape: EscapeConfig { budget: 5_000, ..Default::default() }, ..Default::default() }
    }

    #[test]
    fn octahedron_reference_circle_is_certified() {
        let o = octahedron_iceberg(1.38, 5.0).unwrap();
        let rep = holding_report(&o.body, &o.circle.unwrap(), &fast());
        assert_eq!(rep.verdict, Verdict::CertifiedHoldingEvidence);
        assert!(rep.is_consistent());
        assert!(rep.chain.is_some());
    }

    #[test]
    fn cube_with_loose_circle_escapes() {
        let pts: Vec<Point3> = (0..8)
            .map(|i| Point3::new([-1.0, 1.0][i & 1], [-1.0, 1.0][(i >> 1) & 1], [-1.0, 1.0][(i >> 2) & 1]))
            .collect();
        let k = build_hull(&pts).unwrap();
        let rep = holding_report(&k, &Circle3::horizontal(Point3::zeros(), 10.0), &fast());
        assert_eq!(rep.verdict, Verdict::EscapeFound);
        assert!(!rep.blocked_above && !rep.blocked_below);
        let inside = holding_report(&k, &Circle3::horizontal(Point3::zeros(), 1.0), &fast());
        assert_eq!(inside.verdict, Verdict::Inconclusive);
        assert!(inside.is_consistent());
    }
}
