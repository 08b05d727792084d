//! Hourly weather input: TMY3-style files, calendar slicing, and
//! plane-of-array irradiance for fixed tilted panels.
//!
//! Records are stored hour-beginning in local standard time. TMY3 files label
//! each row with the hour it *ends* (`01:00` … `24:00`); the parser shifts the
//! label back by one hour and the writer shifts it forward again.

mod solar;
mod tmy3;

use std::fmt;

use chrono::{Datelike, NaiveDateTime, Timelike};
use thiserror::Error;

pub use solar::{plane_of_array, solar_position, SolarPosition, DEFAULT_ALBEDO};
pub use tmy3::{parse_tmy3, read_tmy3, write_tmy3, REQUIRED_COLUMNS};

/// Hours in a TMY3 year (365 days, no leap day).
pub const HOURS_PER_YEAR: usize = 8760;

/// Upper plausibility bound on any irradiance component, W/m².
pub const MAX_IRRADIANCE: f64 = 1500.0;
/// Plausible ambient temperature range, °C.
pub const DRY_BULB_RANGE: (f64, f64) = (-90.0, 60.0);

const DAYS_IN_MONTH: [u32; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];

#[derive(Debug, Error)]
pub enum WeatherError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("expected {expected} data rows, found {found}")]
    RowCountMismatch { expected: usize, found: usize },
    #[error("line {line}: {field} = {value} is out of range")]
    ValueOutOfRange {
        line: usize,
        field: &'static str,
        value: f64,
    },
    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("date {0} not found in weather year")]
    DateNotFound(CalendarDate),
    #[error("weather day must hold 24 consecutive hours: {0}")]
    InvalidDay(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Month and day without a year. TMY3 years are composites of different
/// source years, so dates are matched on month/day only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CalendarDate {
    pub month: u32,
    pub day: u32,
}

impl CalendarDate {
    pub fn new(month: u32, day: u32) -> Self {
        Self { month, day }
    }

    /// Zero-based day of a 365-day year, or `None` for dates that do not exist
    /// in a TMY3 year (including Feb 29).
    pub fn day_of_year(&self) -> Option<usize> {
        if !(1..=12).contains(&self.month) {
            return None;
        }
        let m = (self.month - 1) as usize;
        if self.day == 0 || self.day > DAYS_IN_MONTH[m] {
            return None;
        }
        let before: u32 = DAYS_IN_MONTH[..m].iter().sum();
        Some((before + self.day - 1) as usize)
    }

    pub fn from_day_of_year(doy: usize) -> Self {
        let mut rest = (doy % 365) as u32;
        for (m, &len) in DAYS_IN_MONTH.iter().enumerate() {
            if rest < len {
                return Self::new(m as u32 + 1, rest + 1);
            }
            rest -= len;
        }
        unreachable!("day of year is reduced modulo 365")
    }

    /// Parses `MM/DD` or `MM/DD/YYYY` (the year is ignored).
    pub fn parse(s: &str) -> Option<Self> {
        let mut parts = s.trim().split('/');
        let month = parts.next()?.trim().parse().ok()?;
        let day = parts.next()?.trim().parse().ok()?;
        if let Some(year) = parts.next() {
            year.trim().parse::<i32>().ok()?;
        }
        if parts.next().is_some() {
            return None;
        }
        Some(Self { month, day })
    }
}

impl fmt::Display for CalendarDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}/{:02}", self.month, self.day)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeatherRecord {
    /// Start of the hour, local standard time.
    pub timestamp: NaiveDateTime,
    pub ghi: f64,
    pub dni: f64,
    pub dhi: f64,
    pub dry_bulb: f64,
}

impl WeatherRecord {
    /// Position of this record's hour in a 365-day year, ignoring the year
    /// field. Leap-day timestamps have no position.
    pub fn hour_of_year(&self) -> Option<usize> {
        let date = CalendarDate::new(self.timestamp.month(), self.timestamp.day());
        date.day_of_year().map(|d| d * 24 + self.timestamp.hour() as usize)
    }

    pub fn local_hour(&self) -> usize {
        self.timestamp.hour() as usize
    }

    /// Name of the first field violating the record invariants, if any.
    pub fn check_ranges(&self) -> Result<(), (&'static str, f64)> {
        for (name, v) in [("GHI", self.ghi), ("DNI", self.dni), ("DHI", self.dhi)] {
            if !(0.0..=MAX_IRRADIANCE).contains(&v) {
                return Err((name, v));
            }
        }
        if !(DRY_BULB_RANGE.0..=DRY_BULB_RANGE.1).contains(&self.dry_bulb) {
            return Err(("Dry-bulb", self.dry_bulb));
        }
        Ok(())
    }
}

/// Station metadata from the first line of a TMY3 file.
#[derive(Debug, Clone, PartialEq)]
pub struct StationHeader {
    pub id: String,
    pub name: String,
    pub state: String,
    pub tz_offset: Option<f64>,
    pub latitude: Option<f64>,
    pub longitude: Option<f64>,
    pub elevation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeatherYear {
    pub station: StationHeader,
    pub records: Vec<WeatherRecord>,
}

impl WeatherYear {
    /// The 24 records of `date`, hours 00:00 through 23:00.
    pub fn slice_day(&self, date: CalendarDate) -> Result<WeatherDay, WeatherError> {
        let doy = date.day_of_year().ok_or(WeatherError::DateNotFound(date))?;
        let start = doy * 24;
        WeatherDay::new(self.records[start..start + 24].to_vec(), self.station.id.clone())
    }

    /// 24 consecutive records starting `offset_hours` after local midnight of
    /// `date`, wrapping cyclically around the year.
    pub fn window(&self, date: CalendarDate, offset_hours: i64) -> Result<WeatherDay, WeatherError> {
        let doy = date.day_of_year().ok_or(WeatherError::DateNotFound(date))?;
        let n = self.records.len() as i64;
        let start = doy as i64 * 24 + offset_hours;
        let records = (0..24)
            .map(|k| self.records[(start + k).rem_euclid(n) as usize])
            .collect();
        WeatherDay::new(records, self.station.id.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeatherDay {
    records: Vec<WeatherRecord>,
    location_id: String,
}

impl WeatherDay {
    /// Validates that `records` are 24 consecutive hours. Continuity is
    /// checked on month/day/hour, cyclically over the 365-day year.
    pub fn new(records: Vec<WeatherRecord>, location_id: impl Into<String>) -> Result<Self, WeatherError> {
        if records.len() != 24 {
            return Err(WeatherError::InvalidDay(format!("{} records", records.len())));
        }
        for pair in records.windows(2) {
            let (a, b) = (pair[0].hour_of_year(), pair[1].hour_of_year());
            match (a, b) {
                (Some(a), Some(b)) if (a + 1) % HOURS_PER_YEAR == b => {}
                _ => {
                    return Err(WeatherError::InvalidDay(format!(
                        "{} is not followed by {}",
                        pair[0].timestamp, pair[1].timestamp
                    )))
                }
            }
        }
        Ok(Self {
            records,
            location_id: location_id.into(),
        })
    }

    pub fn records(&self) -> &[WeatherRecord] {
        &self.records
    }

    pub fn location_id(&self) -> &str {
        &self.location_id
    }
}

/// Location and panel orientation for solar geometry.
///
/// `panel_azimuth` is a compass bearing (0 = north, 90 = east, 180 = south).
/// An equator-facing panel is 180 in the northern hemisphere and 0 in the
/// southern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteGeometry {
    pub latitude: f64,
    pub longitude: f64,
    pub tz_offset: f64,
    pub panel_tilt: f64,
    pub panel_azimuth: f64,
}

impl SiteGeometry {
    pub fn validate(&self) -> Result<(), String> {
        if !(-90.0..=90.0).contains(&self.latitude) {
            return Err(format!("latitude {} outside [-90, 90]", self.latitude));
        }
        if !(-180.0..=180.0).contains(&self.longitude) {
            return Err(format!("longitude {} outside [-180, 180]", self.longitude));
        }
        if !(0.0..=90.0).contains(&self.panel_tilt) {
            return Err(format!("panel tilt {} outside [0, 90]", self.panel_tilt));
        }
        if !self.tz_offset.is_finite() || self.tz_offset.abs() > 14.0 {
            return Err(format!("timezone offset {} is not a valid UTC offset", self.tz_offset));
        }
        if !self.panel_azimuth.is_finite() {
            return Err("panel azimuth must be finite".into());
        }
        Ok(())
    }

    /// Equator-facing azimuth for this latitude.
    pub fn equator_facing_azimuth(latitude: f64) -> f64 {
        if latitude >= 0.0 {
            180.0
        } else {
            0.0
        }
    }
}
