//! Scenario configuration: one TOML file fully determines a run.
//!
//! ```toml
//! date = "02/01"              # MM/DD of the simulated day; default 02/01
//! alignment = "utc-aligned"   # or "local-day" (default)
//! experiments = [1, 2, 3, 4]  # standard policies; default all four
//! output_dir = "out"          # relative to this file; default "out"
//! albedo = 0.2                # ground reflectance; default 0.2
//!
//! [panel]                     # default: efficiency 0.15, temp_coeff -0.004, noct 45, unit_area 1
//! efficiency = 0.15
//!
//! [[custom_experiments]]      # extra policies, written as scale_factors_<name>.csv
//! name = "half"
//! min_fraction = 0.5
//!
//! [houses.default]            # HouseModel fields
//! [water_heaters.default]     # WaterHeater fields
//! [zip_loads.default]         # ZipLoad fields
//! [schedules.default]         # ScheduleSet: five 24-element arrays
//!
//! [[locations]]
//! name = "Los Angeles"
//! weather_file = "weather/los_angeles.csv"
//! latitude = 34.05
//! longitude = -118.24
//! tz_offset = -8              # hours from UTC, local standard time
//! population = 3831000
//! household_count = 1277000   # optional; defaults to population / 3
//! panel_tilt = 34             # optional; defaults to |latitude|
//! panel_azimuth = 180         # optional compass bearing; defaults to equator-facing
//! house = "default"           # profile names; each defaults to "default"
//! ```

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::household::{HouseModel, Household, ScheduleSet, WaterHeater, ZipLoad};
use crate::optimizer::ConstraintPolicy;
use crate::pv::PanelSpec;
use crate::scenario::{Alignment, LocationSpec};
use crate::weather::{CalendarDate, SiteGeometry, DEFAULT_ALBEDO};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config syntax: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error("location {location}: weather file {path} does not exist")]
    MissingWeatherFile { location: String, path: String },
}

fn default_profile() -> String {
    "default".into()
}

fn default_date() -> String {
    "02/01".into()
}

fn default_experiments() -> Vec<u32> {
    vec![1, 2, 3, 4]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_albedo() -> f64 {
    DEFAULT_ALBEDO
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLocation {
    name: String,
    weather_file: PathBuf,
    latitude: f64,
    longitude: f64,
    tz_offset: f64,
    population: u64,
    household_count: Option<u64>,
    panel_tilt: Option<f64>,
    panel_azimuth: Option<f64>,
    #[serde(default = "default_profile")]
    house: String,
    #[serde(default = "default_profile")]
    water_heater: String,
    #[serde(default = "default_profile")]
    zip_load: String,
    #[serde(default = "default_profile")]
    schedule: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCustomExperiment {
    name: String,
    min_fraction: Option<f64>,
    max_fraction: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default = "default_date")]
    date: String,
    #[serde(default)]
    alignment: Alignment,
    #[serde(default = "default_experiments")]
    experiments: Vec<u32>,
    #[serde(default)]
    custom_experiments: Vec<RawCustomExperiment>,
    #[serde(default = "default_output_dir")]
    output_dir: PathBuf,
    #[serde(default = "default_albedo")]
    albedo: f64,
    #[serde(default)]
    panel: Option<PanelSpec>,
    #[serde(default)]
    houses: BTreeMap<String, HouseModel>,
    #[serde(default)]
    water_heaters: BTreeMap<String, WaterHeater>,
    #[serde(default)]
    zip_loads: BTreeMap<String, ZipLoad>,
    #[serde(default)]
    schedules: BTreeMap<String, ScheduleSet>,
    locations: Vec<RawLocation>,
}

/// A named constraint policy to solve.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    /// `exp1` … `exp4` for the standard policies, otherwise the custom name.
    pub id: String,
    pub policy: ConstraintPolicy,
}

impl Experiment {
    pub fn standard(k: u32) -> Option<Self> {
        ConstraintPolicy::experiment(k).map(|policy| Self {
            id: format!("exp{k}"),
            policy,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub date: CalendarDate,
    pub alignment: Alignment,
    pub albedo: f64,
    pub panel: PanelSpec,
    pub experiments: Vec<Experiment>,
    /// Resolved against the config file's directory.
    pub output_dir: PathBuf,
    /// Weather paths resolved against the config file's directory.
    pub locations: Vec<LocationSpec>,
    pub houses: BTreeMap<String, HouseModel>,
    pub water_heaters: BTreeMap<String, WaterHeater>,
    pub zip_loads: BTreeMap<String, ZipLoad>,
    pub schedules: BTreeMap<String, ScheduleSet>,
}

impl ScenarioConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        let config = Self::parse(&text, base)?;
        config.validate()?;
        Ok(config)
    }

    /// Parses without touching the filesystem; relative paths are joined to
    /// `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;

        let date = CalendarDate::parse(&raw.date)
            .filter(|d| d.day_of_year().is_some())
            .ok_or_else(|| {
                ConfigError::Invalid(format!("date {:?} is not a valid MM/DD in a 365-day year", raw.date))
            })?;

        let mut experiments = Vec::new();
        for k in raw.experiments {
            experiments.push(
                Experiment::standard(k)
                    .ok_or_else(|| ConfigError::Invalid(format!("experiment {k} is not one of 1, 2, 3, 4")))?,
            );
        }
        for c in raw.custom_experiments {
            experiments.push(Experiment {
                id: c.name,
                policy: ConstraintPolicy {
                    min_fraction: c.min_fraction,
                    max_fraction: c.max_fraction,
                },
            });
        }

        let locations = raw
            .locations
            .into_iter()
            .map(|l| LocationSpec {
                geometry: SiteGeometry {
                    latitude: l.latitude,
                    longitude: l.longitude,
                    tz_offset: l.tz_offset,
                    panel_tilt: l.panel_tilt.unwrap_or(l.latitude.abs()),
                    panel_azimuth: l
                        .panel_azimuth
                        .unwrap_or(SiteGeometry::equator_facing_azimuth(l.latitude)),
                },
                name: l.name,
                population: l.population,
                household_count: l.household_count,
                weather_file: base_dir.join(l.weather_file),
                house: l.house,
                water_heater: l.water_heater,
                zip_load: l.zip_load,
                schedule: l.schedule,
            })
            .collect();

        Ok(Self {
            date,
            alignment: raw.alignment,
            albedo: raw.albedo,
            panel: raw.panel.unwrap_or_default(),
            experiments,
            output_dir: base_dir.join(raw.output_dir),
            locations,
            houses: raw.houses,
            water_heaters: raw.water_heaters,
            zip_loads: raw.zip_loads,
            schedules: raw.schedules,
        })
    }

    /// Checks every invariant that can be checked without reading weather
    /// data, including that each weather file exists.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |s: String| Err(ConfigError::Invalid(s));
        if self.locations.is_empty() {
            return invalid("at least one location is required".into());
        }
        if !(0.0..=1.0).contains(&self.albedo) {
            return invalid(format!("albedo {} outside [0, 1]", self.albedo));
        }
        self.panel.validate().map_err(ConfigError::Invalid)?;

        let mut ids = HashSet::new();
        for e in &self.experiments {
            if e.id.is_empty() || !e.id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                return invalid(format!("experiment name {:?} must be non-empty [A-Za-z0-9_-]", e.id));
            }
            if !ids.insert(e.id.as_str()) {
                return invalid(format!("experiment {} listed twice", e.id));
            }
            e.policy
                .validate()
                .map_err(|err| ConfigError::Invalid(format!("experiment {}: {err}", e.id)))?;
        }

        let mut names = HashSet::new();
        for loc in &self.locations {
            if !names.insert(loc.name.as_str()) {
                return invalid(format!("location {} listed twice", loc.name));
            }
            if loc.population == 0 {
                return invalid(format!("location {}: population must be > 0", loc.name));
            }
            if loc.household_count == Some(0) {
                return invalid(format!("location {}: household_count must be > 0 when given", loc.name));
            }
            loc.geometry
                .validate()
                .map_err(|e| ConfigError::Invalid(format!("location {}: {e}", loc.name)))?;
            if self.alignment == Alignment::UtcAligned && loc.geometry.tz_offset.fract() != 0.0 {
                return invalid(format!(
                    "location {}: utc-aligned runs need whole-hour tz_offset, got {}",
                    loc.name, loc.geometry.tz_offset
                ));
            }
            self.household_for(loc)?
                .validate()
                .map_err(|e| ConfigError::Invalid(format!("location {}: {e}", loc.name)))?;
            if !loc.weather_file.is_file() {
                return Err(ConfigError::MissingWeatherFile {
                    location: loc.name.clone(),
                    path: loc.weather_file.display().to_string(),
                });
            }
        }
        Ok(())
    }

    /// Resolves a location's profile references.
    pub fn household_for(&self, loc: &LocationSpec) -> Result<Household, ConfigError> {
        fn get<T: Clone>(map: &BTreeMap<String, T>, kind: &str, key: &str, loc: &str) -> Result<T, ConfigError> {
            map.get(key)
                .cloned()
                .ok_or_else(|| ConfigError::Invalid(format!("location {loc}: unknown {kind} profile {key:?}")))
        }
        Ok(Household {
            house: get(&self.houses, "house", &loc.house, &loc.name)?,
            water_heater: get(&self.water_heaters, "water_heater", &loc.water_heater, &loc.name)?,
            zip: get(&self.zip_loads, "zip_load", &loc.zip_load, &loc.name)?,
            schedule: get(&self.schedules, "schedule", &loc.schedule, &loc.name)?,
        })
    }

    /// Replaces the experiment list with the given standard experiments.
    pub fn select_experiments(&mut self, ks: &[u32]) -> Result<(), ConfigError> {
        self.experiments = ks
            .iter()
            .map(|&k| {
                Experiment::standard(k)
                    .ok_or_else(|| ConfigError::Invalid(format!("experiment {k} is not one of 1, 2, 3, 4")))
            })
            .collect::<Result<_, _>>()?;
        Ok(())
    }
}
