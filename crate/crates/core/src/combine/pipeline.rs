//! End-to-end run: hypotheses, ends, solver, β, then the requested checks.

use serde::{Deserialize, Serialize};

use super::{
    assign_ends, build_beta, check_equivariance, freeness_check, solve_c5_prime, solve_theta_ge,
    validate_hypotheses, C5Outcome, CombineError, EquivarianceReport, FreenessReport, GraphOfGroups,
    HypothesisReport, RelationRecord, Strategy,
};
use crate::ogroup::{AffineMap, OAutomorphism};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombineOptions {
    pub strategy: Strategy,
    /// Conjugator length for the bounded π₁ search.
    pub bound: usize,
    /// Word length for the freeness check.
    pub freeness: Option<usize>,
    /// Ball radius and element length for the equivariance check.
    pub equivariance: Option<usize>,
}

impl CombineOptions {
    pub fn new(strategy: Strategy) -> Self {
        CombineOptions {
            strategy,
            bound: 4,
            freeness: None,
            equivariance: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDilation {
    pub edge: String,
    pub theta: OAutomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub beta: AffineMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombineReport {
    pub strategy: Strategy,
    pub hypotheses: HypothesisReport,
    pub ends: Vec<String>,
    pub transcript: Vec<String>,
    pub dilations: Vec<EdgeDilation>,
    /// Integer translation parts, when solved over ℤ.
    pub rho: Vec<(String, String)>,
    pub beta: Vec<GeneratorImage>,
    pub relations: Vec<RelationRecord>,
    pub freeness: Option<FreenessReport>,
    pub equivariance: Option<EquivarianceReport>,
    pub notes: Vec<String>,
    /// Stage and reason at which the run stopped, if it did.
    pub failure: Option<String>,
}

impl CombineReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
            && !self.hypotheses.has_fail()
            && self.freeness.as_ref().is_none_or(FreenessReport::passed)
            && self.equivariance.as_ref().is_none_or(EquivarianceReport::passed)
    }
}

/// Runs the whole construction. Errors are reserved for malformed input;
/// mathematical obstructions end up in `failure`.
pub fn run_combine(g: &GraphOfGroups, opts: &CombineOptions) -> Result<CombineReport, CombineError> {
    let mut report = CombineReport {
        strategy: opts.strategy,
        hypotheses: validate_hypotheses(g, opts.bound)?,
        ends: Vec::new(),
        transcript: Vec::new(),
        dilations: Vec::new(),
        rho: Vec::new(),
        beta: Vec::new(),
        relations: Vec::new(),
        freeness: None,
        equivariance: None,
        notes: Vec::new(),
        failure: None,
    };
    if report.hypotheses.has_fail() {
        report.failure = Some("hypotheses: at least one condition fails".into());
        return Ok(report);
    }
    let ends = match assign_ends(g) {
        Ok(e) => e,
        Err(e @ CombineError::OrbitCollision { .. }) => {
            report.failure = Some(format!("ends: {e}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.ends = ends.describe(g);

    let solved = match opts.strategy {
        Strategy::C5Prime => match solve_c5_prime(g, &ends) {
            Ok(C5Outcome::Feasible { solution, rho }) => {
                report.rho = rho.into_iter().map(|(n, r)| (n, r.to_string())).collect();
                Ok(solution)
            }
            Ok(C5Outcome::Infeasible {
                equations,
                certificate,
            }) => {
                report.transcript = equations;
                Err(format!(
                    "solve: the integer system has no solution (certificate {})",
                    certificate.join(", ")
                ))
            }
            Err(e) => Err(format!("solve: {e}")),
        },
        s => solve_theta_ge(g, &ends, s).map_err(|e| format!("solve: {e}")),
    };
    let sol = match solved {
        Ok(s) => s,
        Err(why) => {
            report.failure = Some(why);
            return Ok(report);
        }
    };
    report.transcript = sol.transcript.clone();
    report.dilations = g
        .edges
        .iter()
        .zip(&sol.theta)
        .map(|(e, t)| EdgeDilation {
            edge: e.id.clone(),
            theta: t.clone(),
        })
        .collect();

    let beta = match build_beta(g, &sol, &ends) {
        Ok(b) => b,
        Err(e @ CombineError::RelationFailure { .. }) => {
            report.failure = Some(format!("beta: {e}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.beta = beta
        .table()
        .into_iter()
        .map(|(generator, beta)| GeneratorImage { generator, beta })
        .collect();
    report.relations = beta.relations.clone();

    if let Some(len) = opts.freeness {
        if g.is_single_vertex() {
            report.freeness = Some(freeness_check(g, &sol, &beta, len)?);
        } else {
            report
                .notes
                .push("freeness check skipped: it needs a graph with one vertex".into());
        }
    }
    if let Some(n) = opts.equivariance {
        report.equivariance = Some(check_equivariance(g, &sol, &beta, &ends, n)?);
    }
    Ok(report)
}
