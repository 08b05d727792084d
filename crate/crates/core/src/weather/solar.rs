use std::f64::consts::PI;

use chrono::{Datelike, Timelike};

use super::{CalendarDate, SiteGeometry, WeatherRecord};

/// Ground reflectance used when a scenario does not override it.
pub const DEFAULT_ALBEDO: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolarPosition {
    /// Degrees from vertical. Above 90 the sun is below the horizon.
    pub zenith: f64,
    /// Compass bearing of the sun, degrees clockwise from north.
    pub azimuth: f64,
    pub declination: f64,
    pub hour_angle: f64,
}

impl SolarPosition {
    pub fn cos_zenith(&self) -> f64 {
        self.zenith.to_radians().cos()
    }

    /// Solar position at the middle of the record's hour. TMY3 irradiance is
    /// integrated over the hour, so the midpoint is the representative instant.
    pub fn for_record(rec: &WeatherRecord, geo: &SiteGeometry) -> Self {
        let ts = rec.timestamp;
        let doy = CalendarDate::new(ts.month(), ts.day())
            .day_of_year()
            .unwrap_or(ts.ordinal0() as usize);
        solar_position(doy, ts.hour() as f64 + 0.5, geo)
    }
}

/// NOAA general solar position approximation (Fourier series for declination
/// and equation of time). Accurate to roughly ±0.5° which is ample at hourly
/// resolution.
///
/// `day_of_year` is zero-based; `local_hour` is decimal hours of local
/// standard time.
pub fn solar_position(day_of_year: usize, local_hour: f64, geo: &SiteGeometry) -> SolarPosition {
    let utc_hour = local_hour - geo.tz_offset;
    let gamma = 2.0 * PI / 365.0 * (day_of_year as f64 + (utc_hour - 12.0) / 24.0);

    let eq_time = 229.18
        * (0.000075 + 0.001868 * gamma.cos()
            - 0.032077 * gamma.sin()
            - 0.014615 * (2.0 * gamma).cos()
            - 0.040849 * (2.0 * gamma).sin());
    let decl = 0.006918 - 0.399912 * gamma.cos() + 0.070257 * gamma.sin() - 0.006758 * (2.0 * gamma).cos()
        + 0.000907 * (2.0 * gamma).sin()
        - 0.002697 * (3.0 * gamma).cos()
        + 0.00148 * (3.0 * gamma).sin();

    // true solar time, minutes
    let time_offset = eq_time + 4.0 * geo.longitude - 60.0 * geo.tz_offset;
    let tst = local_hour * 60.0 + time_offset;
    let ha = (tst / 4.0 - 180.0).to_radians();

    let lat = geo.latitude.to_radians();
    let cos_z = (lat.sin() * decl.sin() + lat.cos() * decl.cos() * ha.cos()).clamp(-1.0, 1.0);
    let zenith = cos_z.acos();

    let az_south = ha.sin().atan2(ha.cos() * lat.sin() - decl.tan() * lat.cos());
    let azimuth = (az_south.to_degrees() + 180.0).rem_euclid(360.0);

    SolarPosition {
        zenith: zenith.to_degrees(),
        azimuth,
        declination: decl.to_degrees(),
        hour_angle: ha.to_degrees(),
    }
}

/// Isotropic-sky (Liu-Jordan) transposition of the record's irradiance onto
/// the panel plane, W/m². The beam term is clamped to zero when the sun is
/// behind the panel or below the horizon.
pub fn plane_of_array(rec: &WeatherRecord, geo: &SiteGeometry, albedo: f64) -> f64 {
    let sun = SolarPosition::for_record(rec, geo);
    let tilt = geo.panel_tilt.to_radians();
    let cos_tilt = tilt.cos();

    let cos_incidence = if sun.zenith < 90.0 {
        let z = sun.zenith.to_radians();
        let rel_az = (sun.azimuth - geo.panel_azimuth).to_radians();
        z.cos() * cos_tilt + z.sin() * tilt.sin() * rel_az.cos()
    } else {
        0.0
    };

    let beam = rec.dni * cos_incidence.max(0.0);
    let diffuse = rec.dhi * (1.0 + cos_tilt) / 2.0;
    let reflected = rec.ghi * albedo * (1.0 - cos_tilt) / 2.0;
    (beam + diffuse + reflected).max(0.0)
}
