//! Bundled ten-city scenario: a default house and deterministic synthetic
//! weather years for ten cities spaced roughly two time zones apart.
//!
//! The weather is generated, not measured: clear-sky irradiance from a
//! Meinel beam model with Kasten-Young air mass, thinned by a seeded daily
//! clearness index, and a sinusoidal annual plus diurnal temperature cycle
//! with a seeded day-to-day anomaly. House and schedule parameters are
//! assumptions chosen to be plausible for an all-electric home.

use std::f64::consts::PI;
use std::path::Path;

use chrono::NaiveDate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::household::{HouseModel, Household, ScheduleSet, WaterHeater, ZipLoad};
use crate::weather::{
    solar_position, write_tmy3, SiteGeometry, StationHeader, WeatherError, WeatherRecord, WeatherYear, HOURS_PER_YEAR,
};

const SOLAR_CONSTANT: f64 = 1361.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CityClimate {
    pub name: &'static str,
    /// File stem for the weather file.
    pub slug: &'static str,
    pub latitude: f64,
    pub longitude: f64,
    pub tz_offset: f64,
    pub population: u64,
    pub household_count: Option<u64>,
    /// °C
    pub annual_mean: f64,
    /// Half the summer-winter swing, °C.
    pub seasonal_amplitude: f64,
    /// Half the day-night swing, °C.
    pub diurnal_amplitude: f64,
    /// Mean daily clearness index, 0..1.
    pub clearness: f64,
    pub seed: u64,
}

impl CityClimate {
    pub fn geometry(&self) -> SiteGeometry {
        SiteGeometry {
            latitude: self.latitude,
            longitude: self.longitude,
            tz_offset: self.tz_offset,
            panel_tilt: self.latitude.abs().round(),
            panel_azimuth: SiteGeometry::equator_facing_azimuth(self.latitude),
        }
    }
}

macro_rules! city {
    ($name:literal, $slug:literal, $lat:expr, $lon:expr, $tz:expr, $pop:expr, $hh:expr,
     $mean:expr, $season:expr, $diurnal:expr, $clear:expr, $seed:expr) => {
        CityClimate {
            name: $name,
            slug: $slug,
            latitude: $lat,
            longitude: $lon,
            tz_offset: $tz,
            population: $pop,
            household_count: $hh,
            annual_mean: $mean,
            seasonal_amplitude: $season,
            diurnal_amplitude: $diurnal,
            clearness: $clear,
            seed: $seed,
        }
    };
}

pub const TEN_CITIES: [CityClimate; 10] = [
    city!(
        "Los Angeles",
        "los_angeles",
        34.05,
        -118.24,
        -8.0,
        3_831_000,
        None,
        18.5,
        4.5,
        5.0,
        0.85,
        101
    ),
    city!("Brasilia", "brasilia", -15.79, -47.88, -3.0, 2_570_000, None, 21.5, 1.5, 5.5, 0.6, 102),
    city!("Dakar", "dakar", 14.69, -17.44, 0.0, 1_030_000, None, 24.5, 3.5, 3.0, 0.85, 103),
    city!(
        "London",
        "london",
        51.51,
        -0.13,
        0.0,
        7_750_000,
        Some(3_200_000),
        11.0,
        7.0,
        3.5,
        0.45,
        104
    ),
    city!("Nairobi", "nairobi", -1.29, 36.82, 3.0, 3_140_000, None, 18.5, 1.2, 6.0, 0.7, 105),
    city!("Muscat", "muscat", 23.59, 58.41, 4.0, 775_000, None, 28.5, 6.5, 4.5, 0.9, 106),
    city!("Almaty", "almaty", 43.24, 76.95, 6.0, 1_390_000, None, 9.5, 14.0, 5.5, 0.6, 107),
    city!(
        "Singapore",
        "singapore",
        1.35,
        103.82,
        8.0,
        4_990_000,
        Some(1_120_000),
        27.5,
        1.0,
        3.5,
        0.55,
        108
    ),
    city!("Sydney", "sydney", -33.87, 151.21, 10.0, 4_400_000, None, 18.0, 4.5, 4.0, 0.7, 109),
    city!(
        "Auckland",
        "auckland",
        -36.85,
        174.76,
        12.0,
        1_380_000,
        Some(470_000),
        15.5,
        4.0,
        4.0,
        0.65,
        110
    ),
];

/// The model house shared by every bundled location. Floor area is the
/// 1735 ft² household average; the rest are typical all-electric values.
pub fn default_household() -> Household {
    Household {
        house: HouseModel {
            floor_area: 1735.0,
            envelope_ua: 250.0,
            mass_capacitance: 8.0e6,
            mass_surface_conductance: 2500.0,
            glazing_gain_fraction: 0.3,
            window_area: 20.0,
            hvac_capacity: 10_000.0,
            hvac_cop_cool: 3.0,
            hvac_cop_heat: 1.0,
            deadband: 1.0,
        },
        water_heater: WaterHeater {
            tank_volume: 190.0,
            setpoint: 55.0,
            inlet_temp: 15.0,
            heater_power: 4500.0,
            standby_ua: 2.0,
        },
        zip: ZipLoad {
            base_power: 1200.0,
            z_frac: 0.3,
            i_frac: 0.3,
            p_frac: 0.4,
        },
        schedule: default_schedule(),
    }
}

pub fn default_schedule() -> ScheduleSet {
    let day = |h: usize| (6..22).contains(&h);
    ScheduleSet {
        heating_setpoint: std::array::from_fn(|h| if day(h) { 20.0 } else { 17.0 }),
        cooling_setpoint: std::array::from_fn(|h| if day(h) { 25.0 } else { 27.0 }),
        hot_water_draw: [
            0.0, 0.0, 0.0, 0.0, 0.0, 5.0, 30.0, 40.0, 25.0, 10.0, 5.0, 5.0, //
            10.0, 5.0, 5.0, 5.0, 5.0, 10.0, 20.0, 25.0, 30.0, 15.0, 5.0, 0.0,
        ],
        zip_multiplier: [
            0.35, 0.3, 0.3, 0.3, 0.3, 0.4, 0.8, 1.0, 0.9, 0.6, 0.55, 0.6, //
            0.65, 0.6, 0.55, 0.6, 0.7, 0.9, 1.4, 1.6, 1.5, 1.3, 0.9, 0.5,
        ],
        internal_gain: [
            300.0, 300.0, 300.0, 300.0, 300.0, 350.0, 550.0, 600.0, 450.0, 300.0, 300.0, 300.0, //
            350.0, 300.0, 300.0, 300.0, 350.0, 450.0, 650.0, 700.0, 700.0, 600.0, 450.0, 350.0,
        ],
    }
}

fn air_mass(zenith_deg: f64) -> f64 {
    1.0 / (zenith_deg.to_radians().cos() + 0.50572 * (96.07995 - zenith_deg).powf(-1.6364))
}

/// A deterministic synthetic TMY3-style year for `city`, labelled 2009.
/// Irradiance is whole W/m² and temperature is tenths of °C, as in TMY3.
pub fn synthetic_year(city: &CityClimate) -> WeatherYear {
    let mut rng = ChaCha8Rng::seed_from_u64(city.seed);
    let geo = city.geometry();
    let start = NaiveDate::from_ymd_opt(2009, 1, 1)
        .unwrap()
        .and_hms_opt(0, 0, 0)
        .unwrap();
    let warmest_day = if city.latitude >= 0.0 { 200.0 } else { 17.0 };

    let mut records = Vec::with_capacity(HOURS_PER_YEAR);
    let mut clearness = city.clearness;
    let mut anomaly = 0.0;
    for k in 0..HOURS_PER_YEAR {
        let (doy, hour) = (k / 24, k % 24);
        if hour == 0 {
            let spread = 0.25 * (1.0 - city.clearness) + 0.05;
            clearness = (city.clearness + rng.gen_range(-1.0..1.0) * spread * 2.0).clamp(0.1, 1.0);
            anomaly = 0.6 * anomaly + rng.gen_range(-1.5..1.5);
        }
        let hourly_clearness = (clearness + rng.gen_range(-0.05..0.05)).clamp(0.05, 1.0);

        let sun = solar_position(doy, hour as f64 + 0.5, &geo);
        let (dni, dhi) = if sun.zenith < 89.5 {
            let cos_z = sun.cos_zenith();
            let clear_beam = SOLAR_CONSTANT * 0.7f64.powf(air_mass(sun.zenith).powf(0.678));
            let beam_h = clear_beam * cos_z;
            let dni = clear_beam * hourly_clearness * hourly_clearness;
            let dhi = 0.18 * beam_h + 10.0 * cos_z + (1.0 - hourly_clearness) * 0.35 * beam_h;
            (dni.round(), dhi.round())
        } else {
            (0.0, 0.0)
        };
        let ghi = (dni * sun.cos_zenith().max(0.0) + dhi).round();

        let season = (2.0 * PI * (doy as f64 - warmest_day) / 365.0).cos();
        let diurnal = (2.0 * PI * (hour as f64 + 0.5 - 15.0) / 24.0).cos();
        let temp = city.annual_mean
            + city.seasonal_amplitude * season
            + city.diurnal_amplitude * diurnal
            + anomaly
            + rng.gen_range(-0.3..0.3);

        records.push(WeatherRecord {
            timestamp: start + chrono::Duration::hours(k as i64),
            ghi,
            dni,
            dhi,
            dry_bulb: (temp * 10.0).round() / 10.0,
        });
    }

    WeatherYear {
        station: StationHeader {
            id: format!("SYN{:03}", city.seed),
            name: city.name.to_uppercase(),
            state: "SYNTHETIC".into(),
            tz_offset: Some(city.tz_offset),
            latitude: Some(city.latitude),
            longitude: Some(city.longitude),
            elevation: None,
        },
        records,
    }
}

/// Writes `<slug>.csv` for each bundled city into `dir`.
pub fn write_weather_files(dir: &Path) -> Result<(), WeatherError> {
    std::fs::create_dir_all(dir).map_err(|source| WeatherError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    for city in &TEN_CITIES {
        let path = dir.join(format!("{}.csv", city.slug));
        let file = std::fs::File::create(&path).map_err(|source| WeatherError::Io {
            path: path.display().to_string(),
            source,
        })?;
        write_tmy3(&synthetic_year(city), std::io::BufWriter::new(file))?;
    }
    Ok(())
}
