//! City-scale consumption and unitized production matrices.
//!
//! Both matrices have 24 rows (simulation hours) and one column per location.
//! Consumption is MWh per hour for the whole location; production is MWh per
//! hour per m² of panel installed there.

use std::io::Write;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::sig6;
use crate::household::ConsumptionTrace;
use crate::pv::ProductionTrace;
use crate::weather::{CalendarDate, SiteGeometry, WeatherDay, WeatherError, WeatherYear};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("expected {expected} entries, found {found} ({what})")]
    TraceLengthMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    InvalidEntry(String),
}

/// How the 24 matrix rows map onto each location's clock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alignment {
    /// Row `t` is local hour `t` of the simulation date at every location.
    #[default]
    LocalDay,
    /// Row `t` is UTC hour `t` of the simulation date; each location
    /// contributes whatever local hour that is.
    UtcAligned,
}

impl std::fmt::Display for Alignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Alignment::LocalDay => "local-day",
            Alignment::UtcAligned => "utc-aligned",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocationSpec {
    pub name: String,
    pub geometry: SiteGeometry,
    pub population: u64,
    pub household_count: Option<u64>,
    pub weather_file: PathBuf,
    pub house: String,
    pub water_heater: String,
    pub zip_load: String,
    pub schedule: String,
}

/// Explicit household count when given, otherwise one household per three
/// residents (rounded down).
pub fn household_count(loc: &LocationSpec) -> u64 {
    loc.household_count.unwrap_or(loc.population / 3)
}

pub fn households_from_population(loc: &LocationSpec) -> bool {
    loc.household_count.is_none()
}

/// The 24 weather records feeding one matrix column.
pub fn weather_window(
    year: &WeatherYear,
    date: CalendarDate,
    alignment: Alignment,
    tz_offset: f64,
) -> Result<WeatherDay, WeatherError> {
    match alignment {
        Alignment::LocalDay => year.slice_day(date),
        Alignment::UtcAligned => {
            if tz_offset.fract() != 0.0 {
                return Err(WeatherError::InvalidDay(format!(
                    "utc-aligned rows need a whole-hour timezone, got {tz_offset}"
                )));
            }
            year.window(date, tz_offset as i64)
        }
    }
}

/// A 24-row matrix stored column by column.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HourlyMatrix {
    cols: Vec<[f64; 24]>,
}

impl HourlyMatrix {
    pub fn from_columns(cols: Vec<[f64; 24]>) -> Self {
        Self { cols }
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }

    pub fn at(&self, hour: usize, loc: usize) -> f64 {
        self.cols[loc][hour]
    }

    pub fn column(&self, loc: usize) -> &[f64; 24] {
        &self.cols[loc]
    }

    pub fn row_sum(&self, hour: usize) -> f64 {
        self.cols.iter().map(|c| c[hour]).sum()
    }

    pub fn column_sum(&self, loc: usize) -> f64 {
        self.cols[loc].iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioMatrices {
    pub names: Vec<String>,
    pub households: Vec<u64>,
    /// MWh per hour, city-scaled.
    pub consumption: HourlyMatrix,
    /// MWh per hour per m² of panel.
    pub production: HourlyMatrix,
}

fn to_column(what: String, v: &[f64]) -> Result<[f64; 24], ScenarioError> {
    let col: [f64; 24] = v.try_into().map_err(|_| ScenarioError::TraceLengthMismatch {
        what: what.clone(),
        expected: 24,
        found: v.len(),
    })?;
    if let Some(bad) = col.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(ScenarioError::InvalidEntry(format!(
            "{what}: entry {bad} is not a finite value >= 0"
        )));
    }
    Ok(col)
}

impl ScenarioMatrices {
    /// Builds matrices directly from per-location hourly columns.
    pub fn from_columns(
        names: Vec<String>,
        households: Vec<u64>,
        consumption: &[Vec<f64>],
        production: &[Vec<f64>],
    ) -> Result<Self, ScenarioError> {
        let n = names.len();
        for (what, len) in [
            ("households", households.len()),
            ("consumption columns", consumption.len()),
            ("production columns", production.len()),
        ] {
            if len != n {
                return Err(ScenarioError::TraceLengthMismatch {
                    what: what.into(),
                    expected: n,
                    found: len,
                });
            }
        }
        let cons = consumption
            .iter()
            .zip(&names)
            .map(|(c, name)| to_column(format!("consumption of {name}"), c))
            .collect::<Result<_, _>>()?;
        let prod = production
            .iter()
            .zip(&names)
            .map(|(p, name)| to_column(format!("production of {name}"), p))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            names,
            households,
            consumption: HourlyMatrix::from_columns(cons),
            production: HourlyMatrix::from_columns(prod),
        })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn daily_consumption(&self, loc: usize) -> f64 {
        self.consumption.column_sum(loc)
    }

    pub fn daily_unit_production(&self, loc: usize) -> f64 {
        self.production.column_sum(loc)
    }
}

/// Scales each house trace by its location's household count (kWh → MWh)
/// and converts unit-panel production to MWh/m². Column order follows
/// `locations`.
pub fn build_matrices(
    locations: &[LocationSpec],
    traces: &[(ConsumptionTrace, ProductionTrace)],
) -> Result<ScenarioMatrices, ScenarioError> {
    if traces.len() != locations.len() {
        return Err(ScenarioError::TraceLengthMismatch {
            what: "trace pairs per location".into(),
            expected: locations.len(),
            found: traces.len(),
        });
    }
    let households: Vec<u64> = locations.iter().map(household_count).collect();
    let consumption = traces
        .iter()
        .zip(&households)
        .map(|((c, _), &k)| c.kwh.map(|kwh| kwh * k as f64 / 1000.0).to_vec())
        .collect::<Vec<_>>();
    let production = traces
        .iter()
        .map(|(_, p)| p.kwh_per_m2.map(|kwh| kwh / 1000.0).to_vec())
        .collect::<Vec<_>>();
    ScenarioMatrices::from_columns(
        locations.iter().map(|l| l.name.clone()).collect(),
        households,
        &consumption,
        &production,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HourlyTotal {
    /// 1-based hour label (hour ending).
    pub hour: usize,
    pub consumption: f64,
    pub production: f64,
    pub surplus: f64,
}

/// Grid-wide consumption and production each hour for installed `areas`
/// (m² per location).
///
/// # Panics
/// If `areas.len()` differs from the number of locations.
pub fn hourly_totals(m: &ScenarioMatrices, areas: &[f64]) -> Vec<HourlyTotal> {
    assert_eq!(areas.len(), m.n(), "one area per location");
    (0..24)
        .map(|t| {
            let consumption = m.consumption.row_sum(t);
            let production: f64 = areas.iter().enumerate().map(|(i, a)| m.production.at(t, i) * a).sum();
            HourlyTotal {
                hour: t + 1,
                consumption,
                production,
                surplus: production - consumption,
            }
        })
        .collect()
}

pub const HOURLY_TOTALS_HEADER: &str = "hour,consumption_mwh,production_mwh,surplus_mwh";

pub fn write_hourly_totals<W: Write>(rows: &[HourlyTotal], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{HOURLY_TOTALS_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.hour,
            sig6(r.consumption),
            sig6(r.production),
            sig6(r.surplus)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn loc(name: &str, population: u64, households: Option<u64>) -> LocationSpec {
        LocationSpec {
            name: name.into(),
            geometry: SiteGeometry {
                latitude: 0.0,
                longitude: 0.0,
                tz_offset: 0.0,
                panel_tilt: 0.0,
                panel_azimuth: 180.0,
            },
            population,
            household_count: households,
            weather_file: PathBuf::from("unused.csv"),
            house: "h".into(),
            water_heater: "w".into(),
            zip_load: "z".into(),
            schedule: "s".into(),
        }
    }

    fn traces(kwh: f64, prod: f64) -> (ConsumptionTrace, ProductionTrace) {
        (
            ConsumptionTrace {
                kwh: [kwh; 24],
                hvac: [0.0; 24],
                water_heater: [0.0; 24],
                zip: [kwh; 24],
            },
            ProductionTrace { kwh_per_m2: [prod; 24] },
        )
    }

    #[test]
    fn one_third_of_population() {
        assert_eq!(household_count(&loc("a", 3_000_000, None)), 1_000_000);
        assert_eq!(household_count(&loc("a", 3_000_000, Some(500_000))), 500_000);
        assert_eq!(household_count(&loc("a", 1, None)), 0);
        assert!(households_from_population(&loc("a", 1, None)));
    }

    #[test]
    fn scales_by_households() {
        let m = build_matrices(&[loc("a", 6, Some(2))], &[traces(1.0, 0.5)]).unwrap();
        assert!(m.consumption.column(0).iter().all(|&c| (c - 0.002).abs() < 1e-15));
        assert!(m.production.column(0).iter().all(|&p| (p - 0.0005).abs() < 1e-15));
    }

    #[test]
    fn zero_households_keep_production() {
        let m = build_matrices(&[loc("a", 2, None)], &[traces(3.0, 0.4)]).unwrap();
        assert!(m.consumption.column(0).iter().all(|&c| c == 0.0));
        assert!(m.production.column(0).iter().all(|&p| p == 0.4 / 1000.0));
    }

    #[test]
    fn mismatched_traces_rejected() {
        let err = build_matrices(&[loc("a", 3, None), loc("b", 3, None)], &[traces(1.0, 1.0)]);
        assert!(matches!(
            err,
            Err(ScenarioError::TraceLengthMismatch {
                expected: 2,
                found: 1,
                ..
            })
        ));
        let err = ScenarioMatrices::from_columns(vec!["x".into()], vec![1], &[vec![1.0; 23]], &[vec![1.0; 24]]);
        assert!(matches!(
            err,
            Err(ScenarioError::TraceLengthMismatch {
                expected: 24,
                found: 23,
                ..
            })
        ));
    }

    #[test]
    fn zero_areas_produce_nothing() {
        let m = build_matrices(&[loc("a", 30, None)], &[traces(1.0, 1.0)]).unwrap();
        assert!(hourly_totals(&m, &[0.0]).iter().all(|r| r.production == 0.0));
    }

    #[test]
    fn csv_layout() {
        let rows = [HourlyTotal {
            hour: 1,
            consumption: 49813.0,
            production: 66449.0,
            surplus: 16636.0,
        }];
        let mut buf = Vec::new();
        write_hourly_totals(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "hour,consumption_mwh,production_mwh,surplus_mwh\n1,49813,66449,16636\n"
        );
    }

    fn random_matrices() -> impl Strategy<Value = (ScenarioMatrices, Vec<f64>)> {
        (1usize..6).prop_flat_map(|n| {
            (
                prop::collection::vec(prop::collection::vec(0.0f64..100.0, 24), n),
                prop::collection::vec(prop::collection::vec(0.0f64..1.0, 24), n),
                prop::collection::vec(0u64..1000, n),
                prop::collection::vec(0.0f64..1e4, n),
            )
                .prop_map(move |(c, p, hh, areas)| {
                    let names = (0..n).map(|i| format!("L{i}")).collect();
                    (ScenarioMatrices::from_columns(names, hh, &c, &p).unwrap(), areas)
                })
        })
    }

    proptest! {
        #[test]
        fn totals_match_naive_double_loop((m, areas) in random_matrices()) {
            let rows = hourly_totals(&m, &areas);
            for t in 0..24 {
                let mut cons = 0.0;
                let mut prod = 0.0;
                for i in 0..m.n() {
                    cons += m.consumption.at(t, i);
                    prod += m.production.at(t, i) * areas[i];
                }
                prop_assert!((rows[t].consumption - cons).abs() <= 1e-9 * cons.max(1.0));
                prop_assert!((rows[t].production - prod).abs() <= 1e-9 * prod.max(1.0));
                prop_assert!((rows[t].surplus - (prod - cons)).abs() <= 1e-9 * prod.max(cons).max(1.0));
            }
        }

        #[test]
        fn household_scaling_is_linear(hh in prop::collection::vec(1u64..10_000, 1..5), k in 1u64..50, kwh in 0.0f64..10.0) {
            let locs: Vec<_> = hh.iter().map(|&h| loc("x", 1, Some(h))).collect();
            let scaled: Vec<_> = hh.iter().map(|&h| loc("x", 1, Some(h * k))).collect();
            let tr: Vec<_> = hh.iter().map(|_| traces(kwh, 0.1)).collect();
            let a = build_matrices(&locs, &tr).unwrap();
            let b = build_matrices(&scaled, &tr).unwrap();
            for i in 0..hh.len() {
                for t in 0..24 {
                    let want = a.consumption.at(t, i) * k as f64;
                    prop_assert!((b.consumption.at(t, i) - want).abs() <= 1e-12 * want.max(1.0));
                }
            }
        }

        #[test]
        fn permuting_locations_permutes_columns(seed in 0u64..1000) {
            let n = 4;
            let locs: Vec<_> = (0..n).map(|i| loc(&format!("L{i}"), 10 + i as u64, Some(1 + seed % 7 + i as u64))).collect();
            let tr: Vec<_> = (0..n).map(|i| traces(0.5 + i as f64, 0.1 * (i + 1) as f64)).collect();
            let perm = [2usize, 0, 3, 1];
            let a = build_matrices(&locs, &tr).unwrap();
            let b = build_matrices(
                &perm.iter().map(|&i| locs[i].clone()).collect::<Vec<_>>(),
                &perm.iter().map(|&i| tr[i].clone()).collect::<Vec<_>>(),
            ).unwrap();
            for (j, &i) in perm.iter().enumerate() {
                prop_assert_eq!(b.consumption.column(j), a.consumption.column(i));
                prop_assert_eq!(b.production.column(j), a.production.column(i));
                prop_assert_eq!(&b.names[j], &a.names[i]);
            }
        }
    }
}
