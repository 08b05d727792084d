//! End-to-end run: weather → house and panel traces → matrices → one LP per
//! experiment → validation and storage sizing → output files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::config::{ConfigError, Experiment, ScenarioConfig};
use crate::format::sig6;
use crate::household::{ConsumptionTrace, HouseholdError};
use crate::optimizer::{
    build_lp, diagnose_structure, solve_simplex, validate_solution, LpProblem, LpSolution, LpStatus, OptimizerError,
    ValidationReport,
};
use crate::pv::{simulate_unit_panel_day, ProductionTrace};
use crate::scenario::{
    build_matrices, hourly_totals, household_count, households_from_population, weather_window, write_hourly_totals,
    ScenarioError, ScenarioMatrices,
};
use crate::storage::{estimate_storage, write_storage_report, StorageRow};
use crate::weather::{read_tmy3, WeatherError};

pub const M2_TO_FT2: f64 = 10.763_910_416_709_722;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("location {location}: {source}")]
    Weather {
        location: String,
        #[source]
        source: WeatherError,
    },
    #[error("location {location}: {source}")]
    Simulation {
        location: String,
        #[source]
        source: HouseholdError,
    },
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("experiment {experiment}: infeasible: {detail}")]
    SolveInfeasible { experiment: String, detail: String },
    #[error("experiment {experiment}: validation failed: {detail}")]
    ValidationFailure { experiment: String, detail: String },
    #[error("experiment {experiment}: {source}")]
    Solver {
        experiment: String,
        #[source]
        source: OptimizerError,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 2,
            PipelineError::Weather { .. } => 3,
            PipelineError::SolveInfeasible { .. } => 4,
            PipelineError::ValidationFailure { .. } => 5,
            PipelineError::Simulation { .. } | PipelineError::Scenario(_) => 6,
            PipelineError::Solver { .. } => 7,
            PipelineError::Io { .. } => 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocationResult {
    pub name: String,
    pub households: u64,
    pub households_derived: bool,
    pub consumption: ConsumptionTrace,
    pub production: ProductionTrace,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub experiment: Experiment,
    pub lp: LpProblem,
    /// `Err` holds the solver failure message.
    pub solution: Result<LpSolution, String>,
    pub report: Option<ValidationReport>,
    /// Structural problems spotted before solving.
    pub diagnostics: Vec<String>,
}

impl ExperimentResult {
    pub fn optimal(&self) -> Option<&LpSolution> {
        self.solution.as_ref().ok().filter(|s| s.status == LpStatus::Optimal)
    }

    pub fn passed(&self) -> bool {
        self.optimal().is_some() && self.report.as_ref().is_some_and(|r| r.passed())
    }

    fn failure(&self) -> Option<PipelineError> {
        let experiment = self.experiment.id.clone();
        let sol = match &self.solution {
            Err(msg) => {
                return Some(PipelineError::Solver {
                    experiment,
                    source: OptimizerError::Malformed(msg.clone()),
                })
            }
            Ok(s) => s,
        };
        match sol.status {
            LpStatus::Infeasible => {
                let detail = if let Some(d) = self.diagnostics.first() {
                    d.clone()
                } else {
                    let rows: Vec<_> = sol
                        .infeasible_rows
                        .iter()
                        .map(|&r| self.lp.rows[r].label.as_str())
                        .collect();
                    format!("no panel areas satisfy rows {}", rows.join(", "))
                };
                Some(PipelineError::SolveInfeasible { experiment, detail })
            }
            LpStatus::Unbounded => Some(PipelineError::SolveInfeasible {
                experiment,
                detail: "objective is unbounded below".into(),
            }),
            LpStatus::Optimal => {
                let report = self.report.as_ref()?;
                report.violations.first().map(|v| PipelineError::ValidationFailure {
                    experiment,
                    detail: v.to_string(),
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutputs {
    pub config: ScenarioConfig,
    pub locations: Vec<LocationResult>,
    pub matrices: ScenarioMatrices,
    pub experiments: Vec<ExperimentResult>,
    pub storage: Vec<StorageRow>,
    pub warnings: Vec<String>,
}

impl RunOutputs {
    /// First failing experiment, in selection order.
    pub fn verdict(&self) -> Result<(), PipelineError> {
        match self.experiments.iter().find_map(|e| e.failure()) {
            Some(err) => Err(err),
            None => Ok(()),
        }
    }

    /// Areas behind `hourly_totals.csv`: the first experiment's optimum, or
    /// zeros when there is none.
    pub fn reference_areas(&self) -> Vec<f64> {
        self.experiments
            .first()
            .and_then(|e| e.optimal())
            .map(|s| s.scale_factors.clone())
            .unwrap_or_else(|| vec![0.0; self.matrices.n()])
    }
}

/// Reads weather and simulates house and panel for every location, in
/// parallel, then assembles the matrices.
pub fn simulate_locations(config: &ScenarioConfig) -> Result<(Vec<LocationResult>, ScenarioMatrices), PipelineError> {
    let results: Vec<Result<LocationResult, PipelineError>> = config
        .locations
        .par_iter()
        .map(|loc| {
            let weather_err = |source| PipelineError::Weather {
                location: loc.name.clone(),
                source,
            };
            let household = config.household_for(loc)?;
            let year = read_tmy3(&loc.weather_file).map_err(weather_err)?;
            let day =
                weather_window(&year, config.date, config.alignment, loc.geometry.tz_offset).map_err(weather_err)?;
            let consumption = household
                .simulate_day(&day, &loc.geometry, config.albedo)
                .map_err(|source| PipelineError::Simulation {
                    location: loc.name.clone(),
                    source,
                })?;
            let production = simulate_unit_panel_day(&config.panel, &day, &loc.geometry, config.albedo);
            Ok(LocationResult {
                name: loc.name.clone(),
                households: household_count(loc),
                households_derived: households_from_population(loc),
                consumption,
                production,
            })
        })
        .collect();
    let locations = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let traces: Vec<_> = locations
        .iter()
        .map(|l| (l.consumption.clone(), l.production.clone()))
        .collect();
    let matrices = build_matrices(&config.locations, &traces)?;
    Ok((locations, matrices))
}

pub fn solve_experiment(
    m: &ScenarioMatrices,
    experiment: &Experiment,
    unit_area: f64,
) -> Result<ExperimentResult, PipelineError> {
    let lp = build_lp(m, &experiment.policy, unit_area).map_err(|source| PipelineError::Solver {
        experiment: experiment.id.clone(),
        source,
    })?;
    let diagnostics = diagnose_structure(m, &experiment.policy);
    let solution = solve_simplex(&lp).map_err(|e| e.to_string());
    let report = match &solution {
        Ok(s) if s.status == LpStatus::Optimal => Some(validate_solution(m, s, &experiment.policy)),
        _ => None,
    };
    Ok(ExperimentResult {
        experiment: experiment.clone(),
        lp,
        solution,
        report,
        diagnostics,
    })
}

/// Runs every stage in memory. Solver outcomes are recorded rather than
/// raised; see [`RunOutputs::verdict`].
pub fn run_pipeline(config: &ScenarioConfig) -> Result<RunOutputs, PipelineError> {
    let (locations, matrices) = simulate_locations(config)?;

    let mut warnings = Vec::new();
    for (loc, res) in config.locations.iter().zip(&locations) {
        if res.households_derived {
            warnings.push(format!(
                "{}: household count {} derived from population {} (3 residents per household)",
                loc.name, res.households, loc.population
            ));
        }
        if res.households == 0 {
            warnings.push(format!(
                "{}: zero households, location contributes no consumption",
                loc.name
            ));
        }
        if res.production.daily_kwh_per_m2() == 0.0 {
            warnings.push(format!("{}: panels produce nothing on the simulated day", loc.name));
        }
    }

    let experiments = config
        .experiments
        .iter()
        .map(|e| solve_experiment(&matrices, e, config.panel.unit_area))
        .collect::<Result<Vec<_>, _>>()?;

    let storage = (0..matrices.n())
        .map(|i| StorageRow {
            location: matrices.names[i].clone(),
            daily_consumption_gwh: matrices.daily_consumption(i) / 1000.0,
            estimate: estimate_storage(matrices.consumption.column(i), matrices.production.column(i)).ok(),
        })
        .collect();

    Ok(RunOutputs {
        config: config.clone(),
        locations,
        matrices,
        experiments,
        storage,
        warnings,
    })
}

fn create(path: &Path) -> Result<std::io::BufWriter<std::fs::File>, PipelineError> {
    std::fs::File::create(path)
        .map(std::io::BufWriter::new)
        .map_err(|source| PipelineError::Io {
            path: path.display().to_string(),
            source,
        })
}

pub const SCALE_FACTORS_HEADER: &str = "location,scale_factor_m2,area_ft2,energy_share";

pub fn write_scale_factors<W: std::io::Write>(m: &ScenarioMatrices, sol: &LpSolution, out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(SCALE_FACTORS_HEADER.split(','))?;
    let shares = crate::optimizer::energy_shares(m, &sol.scale_factors);
    for (i, a) in sol.scale_factors.iter().enumerate() {
        let a = a.max(0.0);
        w.write_record([
            m.names[i].clone(),
            sig6(a),
            sig6(a * M2_TO_FT2),
            shares[i].map_or_else(|| "NA".into(), sig6),
        ])?;
    }
    w.flush()
}

/// Writes every output file into `dir` (created if needed) and returns the
/// paths written. Scale factors are only written for optimal experiments.
pub fn write_outputs(outputs: &RunOutputs, dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| PipelineError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();

    let path = dir.join("hourly_totals.csv");
    write_hourly_totals(
        &hourly_totals(&outputs.matrices, &outputs.reference_areas()),
        create(&path)?,
    )
    .map_err(io(&path))?;
    written.push(path);

    for e in &outputs.experiments {
        if let Some(sol) = e.optimal() {
            let path = dir.join(format!("scale_factors_{}.csv", e.experiment.id));
            write_scale_factors(&outputs.matrices, sol, create(&path)?).map_err(io(&path))?;
            written.push(path);
        }
    }

    let path = dir.join("storage_report.csv");
    write_storage_report(&outputs.storage, create(&path)?).map_err(io(&path))?;
    written.push(path);

    let path = dir.join("run_report.txt");
    std::fs::write(&path, report_summary(outputs)).map_err(io(&path))?;
    written.push(path);
    Ok(written)
}

fn policy_text(e: &Experiment) -> String {
    match (e.policy.min_fraction, e.policy.max_fraction) {
        (None, None) => "no share limits".into(),
        (Some(f), None) => format!("share >= {}", sig6(f)),
        (None, Some(g)) => format!("share <= {}", sig6(g)),
        (Some(f), Some(g)) => format!("{} <= share <= {}", sig6(f), sig6(g)),
    }
}

/// Average installed panel area per household in ft², from experiment 1
/// when it solved, otherwise the first optimal experiment.
pub fn area_per_household_ft2(outputs: &RunOutputs) -> Option<(String, f64)> {
    let households: u64 = outputs.matrices.households.iter().sum();
    if households == 0 {
        return None;
    }
    let pick = outputs
        .experiments
        .iter()
        .find(|e| e.experiment.id == "exp1" && e.optimal().is_some())
        .or_else(|| outputs.experiments.iter().find(|e| e.optimal().is_some()))?;
    let total: f64 = pick.optimal()?.scale_factors.iter().map(|a| a.max(0.0)).sum();
    Some((pick.experiment.id.clone(), total * M2_TO_FT2 / households as f64))
}

/// Human-readable `run_report.txt`.
pub fn report_summary(outputs: &RunOutputs) -> String {
    let cfg = &outputs.config;
    let m = &outputs.matrices;
    let mut s = String::new();
    let _ = writeln!(s, "solargrid run report");
    let _ = writeln!(s, "date {}  alignment {}  locations {}", cfg.date, cfg.alignment, m.n());
    let _ = writeln!(s);

    let _ = writeln!(s, "Daily consumption");
    for (i, loc) in outputs.locations.iter().enumerate() {
        let _ = writeln!(
            s,
            "  {:<16} {:>10} GWh  {:>10} households  {:>8} kWh/household  unit panel {} kWh/m2",
            loc.name,
            sig6(m.daily_consumption(i) / 1000.0),
            loc.households,
            sig6(loc.consumption.daily_kwh()),
            sig6(loc.production.daily_kwh_per_m2()),
        );
    }
    let total: f64 = (0..m.n()).map(|i| m.daily_consumption(i)).sum();
    let _ = writeln!(s, "  {:<16} {:>10} GWh", "total", sig6(total / 1000.0));
    let _ = writeln!(s);

    if outputs.experiments.is_empty() {
        let _ = writeln!(s, "no experiments selected");
        let _ = writeln!(s);
    }
    for e in &outputs.experiments {
        let _ = writeln!(s, "Experiment {} ({})", e.experiment.id, policy_text(&e.experiment));
        for d in &e.diagnostics {
            let _ = writeln!(s, "  diagnostic: {d}");
        }
        match &e.solution {
            Err(msg) => {
                let _ = writeln!(s, "  solver error: {msg}");
            }
            Ok(sol) => {
                let _ = writeln!(s, "  status {:?}  iterations {}", sol.status, sol.iterations);
                if sol.status == LpStatus::Optimal {
                    let _ = writeln!(
                        s,
                        "  total area {} m2  nonzero locations {}",
                        sig6(sol.objective_value / cfg.panel.unit_area),
                        sol.nonzero_count()
                    );
                    let _ = writeln!(
                        s,
                        "  duality gap certified: {}",
                        if sol.duality_gap_ok(&e.lp, 1e-6) { "yes" } else { "NO" }
                    );
                }
            }
        }
        if let Some(r) = &e.report {
            let _ = writeln!(
                s,
                "  validation {}  min slack {} MWh at hour {}",
                if r.passed() { "PASS" } else { "FAIL" },
                sig6(r.min_slack),
                r.min_slack_hour
            );
            for v in &r.violations {
                let _ = writeln!(s, "  violation: {v}");
            }
            let surplus: Vec<_> = r.hourly_surplus.iter().map(|&x| sig6(x)).collect();
            let _ = writeln!(s, "  hourly surplus MWh: {}", surplus.join(" "));
        }
        let _ = writeln!(s);
    }

    match area_per_household_ft2(outputs) {
        Some((id, ft2)) => {
            let _ = writeln!(s, "Average panel area per household ({id}): {} ft2", sig6(ft2));
        }
        None => {
            let _ = writeln!(s, "Average panel area per household: n/a");
        }
    }
    let _ = writeln!(s);

    let _ = writeln!(s, "Storage for self-sufficiency");
    for row in &outputs.storage {
        match row.estimate {
            Some(e) => {
                let _ = writeln!(
                    s,
                    "  {:<16} {:>10} GWh storage  {:>10} m2 local panels",
                    row.location,
                    sig6(e.storage / 1000.0),
                    sig6(e.area)
                );
            }
            None => {
                let _ = writeln!(s, "  {:<16} no production on the simulated day", row.location);
            }
        }
    }
    let _ = writeln!(s);

    let _ = writeln!(s, "Assumptions");
    let p = &cfg.panel;
    for line in [
        format!(
            "panel efficiency {} temp coeff {}/C NOCT {} C unit area {} m2",
            sig6(p.efficiency),
            sig6(p.temp_coeff),
            sig6(p.noct),
            sig6(p.unit_area)
        ),
        format!("ground albedo {}", sig6(cfg.albedo)),
        "households default to population / 3 when no count is given".into(),
        "consumption MWh per hour at city scale; production MWh per hour per m2".into(),
        "every house starts at its heating setpoint; supply voltage nominal".into(),
        "transmission losses ignored; storage lossless".into(),
        format!(
            "solutions validated at relative tolerance {}",
            crate::optimizer::REPORT_TOLERANCE
        ),
    ] {
        let _ = writeln!(s, "  - {line}");
    }
    let _ = writeln!(s);

    let _ = writeln!(s, "Warnings");
    if outputs.warnings.is_empty() {
        let _ = writeln!(s, "  none");
    }
    for w in &outputs.warnings {
        let _ = writeln!(s, "  - {w}");
    }
    s
}
