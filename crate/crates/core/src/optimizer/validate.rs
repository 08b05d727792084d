use super::{energy_shares, ConstraintPolicy, LpSolution, LpStatus, REPORT_TOLERANCE};
use crate::scenario::ScenarioMatrices;

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// 1-based hour whose production falls short of consumption.
    Balance {
        hour: usize,
        shortfall: f64,
    },
    MinShare {
        location: String,
        share: f64,
    },
    MaxShare {
        location: String,
        share: f64,
    },
    NegativeArea {
        location: String,
        area: f64,
    },
    NotOptimal,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Balance { hour, shortfall } => {
                write!(f, "hour {hour}: production short of consumption by {shortfall} MWh")
            }
            Violation::MinShare { location, share } => {
                write!(f, "{location}: energy share {share} below the minimum")
            }
            Violation::MaxShare { location, share } => {
                write!(f, "{location}: energy share {share} above the maximum")
            }
            Violation::NegativeArea { location, area } => write!(f, "{location}: negative area {area}"),
            Violation::NotOptimal => write!(f, "solution is not optimal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// Production minus consumption for each hour, MWh.
    pub hourly_surplus: Vec<f64>,
    /// 1-based hour with the smallest surplus (earliest on ties).
    pub min_slack_hour: usize,
    pub min_slack: f64,
    pub energy_shares: Vec<Option<f64>>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn within(lhs_minus_rhs: f64, rhs: f64) -> bool {
    lhs_minus_rhs >= -REPORT_TOLERANCE * rhs.abs().max(1.0)
}

/// Re-checks every sizing constraint directly from the matrices at the given
/// areas, independently of any solver state.
pub fn validate_areas(m: &ScenarioMatrices, areas: &[f64], policy: &ConstraintPolicy) -> ValidationReport {
    assert_eq!(areas.len(), m.n(), "one area per location");
    let mut violations = Vec::new();

    let largest = areas.iter().fold(1.0f64, |acc, a| acc.max(a.abs()));
    for (name, &a) in m.names.iter().zip(areas) {
        if a < -1e-9 * largest {
            violations.push(Violation::NegativeArea {
                location: name.clone(),
                area: a,
            });
        }
    }

    let mut hourly_surplus = Vec::with_capacity(24);
    for t in 0..24 {
        let cons = m.consumption.row_sum(t);
        let prod: f64 = (0..m.n()).map(|i| m.production.at(t, i) * areas[i]).sum();
        let surplus = prod - cons;
        if !within(surplus, cons) {
            violations.push(Violation::Balance {
                hour: t + 1,
                shortfall: -surplus,
            });
        }
        hourly_surplus.push(surplus);
    }
    let (min_idx, min_slack) =
        hourly_surplus.iter().copied().enumerate().fold(
            (0, f64::INFINITY),
            |best, (t, s)| if s < best.1 { (t, s) } else { best },
        );

    for i in 0..m.n() {
        let produced = m.daily_unit_production(i) * areas[i];
        let consumed = m.daily_consumption(i);
        let share = if consumed > 0.0 { produced / consumed } else { f64::NAN };
        if let Some(f) = policy.min_fraction {
            if !within(produced - f * consumed, f * consumed) {
                violations.push(Violation::MinShare {
                    location: m.names[i].clone(),
                    share,
                });
            }
        }
        if let Some(g) = policy.max_fraction {
            if !within(g * consumed - produced, g * consumed) {
                violations.push(Violation::MaxShare {
                    location: m.names[i].clone(),
                    share,
                });
            }
        }
    }

    ValidationReport {
        hourly_surplus,
        min_slack_hour: min_idx + 1,
        min_slack,
        energy_shares: energy_shares(m, areas),
        violations,
    }
}

/// [`validate_areas`] on the solver's scale factors; a non-optimal solution
/// always fails.
pub fn validate_solution(m: &ScenarioMatrices, sol: &LpSolution, policy: &ConstraintPolicy) -> ValidationReport {
    let mut report = validate_areas(m, &sol.scale_factors, policy);
    if sol.status != LpStatus::Optimal {
        report.violations.insert(0, Violation::NotOptimal);
    }
    report
}
