//! Panel-area sizing as a linear program, solved by a dense two-phase primal
//! simplex.
//!
//! Decision variable `A[i]` is the panel area (m²) installed at location
//! `i`. The objective minimises `unit_area * sum(A)`. Constraint blocks:
//!
//! * one grid-balance row per hour: `sum_i P[t][i] * A[i] >= sum_i C[t][i]`
//! * optional minimum share per location: `(sum_t P[t][i]) * A[i] >= f * sum_t C[t][i]`
//! * optional maximum share per location: `(sum_t P[t][i]) * A[i] <= g * sum_t C[t][i]`

mod dump;
mod simplex;
mod validate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scenario::ScenarioMatrices;

pub use dump::{parse_lp_dump, write_lp_dump};
pub use simplex::{solve_simplex, SimplexOptions};
pub use validate::{validate_areas, validate_solution, ValidationReport, Violation};

/// Relative tolerance used when reporting and validating solutions.
pub const REPORT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum OptimizerError {
    #[error("scenario has no locations")]
    EmptyScenario,
    #[error("iteration limit of {limit} pivots reached")]
    IterationLimit { limit: usize },
    #[error("invalid constraint policy: {0}")]
    InvalidPolicy(String),
    #[error("malformed LP: {0}")]
    Malformed(String),
}

/// Per-location bounds on daily production as a fraction of that location's
/// daily consumption.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintPolicy {
    pub min_fraction: Option<f64>,
    pub max_fraction: Option<f64>,
}

impl ConstraintPolicy {
    /// The four standard experiments: unconstrained, at least 40 %, at most
    /// 400 %, and both.
    pub fn experiment(k: u32) -> Option<Self> {
        let (min_fraction, max_fraction) = match k {
            1 => (None, None),
            2 => (Some(0.4), None),
            3 => (None, Some(4.0)),
            4 => (Some(0.4), Some(4.0)),
            _ => return None,
        };
        Some(Self {
            min_fraction,
            max_fraction,
        })
    }

    pub fn validate(&self) -> Result<(), OptimizerError> {
        if let Some(f) = self.min_fraction {
            if !(f >= 0.0 && f.is_finite()) {
                return Err(OptimizerError::InvalidPolicy(format!("min_fraction {f} must be >= 0")));
            }
        }
        if let Some(g) = self.max_fraction {
            if !(g > 0.0 && g.is_finite()) {
                return Err(OptimizerError::InvalidPolicy(format!("max_fraction {g} must be > 0")));
            }
            if let Some(f) = self.min_fraction {
                if g <= f {
                    return Err(OptimizerError::InvalidPolicy(format!(
                        "max_fraction {g} must exceed min_fraction {f}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
        }
    }
}

/// What a constraint row stands for in the sizing model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    /// Grid balance at a 0-based hour.
    Balance {
        hour: usize,
    },
    MinShare {
        location: usize,
    },
    MaxShare {
        location: usize,
    },
    Other,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub label: String,
    pub kind: RowKind,
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `minimize objective·x` subject to `rows`, with every variable `>= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub var_names: Vec<String>,
    pub objective: Vec<f64>,
    pub rows: Vec<Constraint>,
}

impl LpProblem {
    /// Unlabelled problem, mainly for tests and external callers.
    pub fn new(objective: Vec<f64>, rows: Vec<(Vec<f64>, Relation, f64)>) -> Self {
        let var_names = (1..=objective.len()).map(|j| format!("x{j}")).collect();
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, (coeffs, relation, rhs))| Constraint {
                label: format!("r{}", i + 1),
                kind: RowKind::Other,
                coeffs,
                relation,
                rhs,
            })
            .collect();
        Self {
            var_names,
            objective,
            rows,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn check(&self) -> Result<(), OptimizerError> {
        let n = self.num_vars();
        if self.var_names.len() != n {
            return Err(OptimizerError::Malformed("one name per variable".into()));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(OptimizerError::Malformed(
                "objective has a non-finite coefficient".into(),
            ));
        }
        for row in &self.rows {
            if row.coeffs.len() != n {
                return Err(OptimizerError::Malformed(format!(
                    "row {} has {} coefficients for {n} variables",
                    row.label,
                    row.coeffs.len()
                )));
            }
            if row.coeffs.iter().chain([&row.rhs]).any(|v| !v.is_finite()) {
                return Err(OptimizerError::Malformed(format!(
                    "row {} has a non-finite entry",
                    row.label
                )));
            }
        }
        Ok(())
    }

    pub fn row_activity(&self, row: usize, x: &[f64]) -> f64 {
        self.rows[row].coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Variable values (m² per location for sizing problems). Only
    /// meaningful when optimal.
    pub scale_factors: Vec<f64>,
    pub objective_value: f64,
    /// One multiplier per constraint row, in the sign convention of the
    /// minimisation dual: `>=` rows have non-negative duals, `<=` rows
    /// non-positive.
    pub dual_values: Vec<f64>,
    pub iterations: usize,
    /// Rows still carrying a positive phase-1 artificial when infeasible.
    pub infeasible_rows: Vec<usize>,
}

impl LpSolution {
    /// `b·y`, the dual objective.
    pub fn dual_objective(&self, p: &LpProblem) -> f64 {
        p.rows.iter().zip(&self.dual_values).map(|(r, y)| r.rhs * y).sum()
    }

    /// Strong-duality certificate: `|primal - dual| <= tol * max(1, |primal|)`.
    pub fn duality_gap_ok(&self, p: &LpProblem, tol: f64) -> bool {
        let primal = self.objective_value;
        (primal - self.dual_objective(p)).abs() <= tol * primal.abs().max(1.0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.scale_factors.iter().filter(|&&a| a > 0.0).count()
    }
}

/// Builds the sizing LP for `m` under `policy`. Every location carries the
/// same cost weight `unit_area`.
pub fn build_lp(m: &ScenarioMatrices, policy: &ConstraintPolicy, unit_area: f64) -> Result<LpProblem, OptimizerError> {
    let n = m.n();
    if n == 0 {
        return Err(OptimizerError::EmptyScenario);
    }
    policy.validate()?;

    let mut rows = Vec::with_capacity(24 + 2 * n);
    for t in 0..24 {
        rows.push(Constraint {
            label: format!("balance_h{:02}", t + 1),
            kind: RowKind::Balance { hour: t },
            coeffs: (0..n).map(|i| m.production.at(t, i)).collect(),
            relation: Relation::Ge,
            rhs: m.consumption.row_sum(t),
        });
    }

    let share_row = |i: usize, fraction: f64, relation: Relation, kind: RowKind, tag: &str| {
        let mut coeffs = vec![0.0; n];
        coeffs[i] = m.daily_unit_production(i);
        Constraint {
            label: format!("{tag}_{}", i + 1),
            kind,
            coeffs,
            relation,
            rhs: fraction * m.daily_consumption(i),
        }
    };
    if let Some(f) = policy.min_fraction {
        rows.extend((0..n).map(|i| share_row(i, f, Relation::Ge, RowKind::MinShare { location: i }, "min_share")));
    }
    if let Some(g) = policy.max_fraction {
        rows.extend((0..n).map(|i| share_row(i, g, Relation::Le, RowKind::MaxShare { location: i }, "max_share")));
    }

    Ok(LpProblem {
        var_names: m.names.clone(),
        objective: vec![unit_area; n],
        rows,
    })
}

/// Infeasibilities visible from the matrices alone, one message each,
/// naming the location or hour responsible.
pub fn diagnose_structure(m: &ScenarioMatrices, policy: &ConstraintPolicy) -> Vec<String> {
    let mut issues = Vec::new();
    if let Some(f) = policy.min_fraction {
        for i in 0..m.n() {
            if m.daily_unit_production(i) == 0.0 && f * m.daily_consumption(i) > 0.0 {
                issues.push(format!(
                    "location {} produces nothing on the simulated day but must cover {}% of its consumption",
                    m.names[i],
                    f * 100.0
                ));
            }
        }
    }
    for t in 0..24 {
        if m.consumption.row_sum(t) > 0.0 && (0..m.n()).all(|i| m.production.at(t, i) == 0.0) {
            issues.push(format!("hour {} has consumption but no location produces", t + 1));
        }
    }
    issues
}

/// Energy share of each location: daily production at `areas` divided by
/// daily consumption; `None` where consumption is zero.
pub fn energy_shares(m: &ScenarioMatrices, areas: &[f64]) -> Vec<Option<f64>> {
    (0..m.n())
        .map(|i| {
            let cons = m.daily_consumption(i);
            (cons > 0.0).then(|| m.daily_unit_production(i) * areas[i] / cons)
        })
        .collect()
}
