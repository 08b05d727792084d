//! One model house's electrical consumption over a simulated day: a two-node
//! thermal network driven by a thermostat, a water heater energy balance, and
//! a ZIP appliance load.

mod thermal;
mod water_heater;
mod zip;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weather::{plane_of_array, SiteGeometry, WeatherDay};

pub use thermal::{thermal_step, HvacMode, StepOutcome, ThermalState, SUBSTEPS_PER_HOUR};
pub use water_heater::{water_heater_energy, WATER_HEAT_CAPACITY};
pub use zip::zip_power;

const FT2_TO_M2: f64 = 0.092_903_04;
const CEILING_HEIGHT_M: f64 = 2.4384;
const AIR_VOLUMETRIC_HEAT: f64 = 1.2 * 1006.0; // J/(m³·°C)

#[derive(Debug, Error)]
pub enum HouseholdError {
    #[error("non-finite thermal state at hour {hour} (parameters violate integration stability)")]
    NonFiniteState { hour: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HouseModel {
    /// ft²
    pub floor_area: f64,
    /// W/°C
    pub envelope_ua: f64,
    /// J/°C
    pub mass_capacitance: f64,
    /// W/°C
    pub mass_surface_conductance: f64,
    pub glazing_gain_fraction: f64,
    /// m²
    pub window_area: f64,
    /// W thermal
    pub hvac_capacity: f64,
    pub hvac_cop_cool: f64,
    pub hvac_cop_heat: f64,
    /// °C
    pub deadband: f64,
}

impl HouseModel {
    /// Heat capacity of the indoor air, J/°C, from an 8 ft ceiling.
    pub fn air_capacitance(&self) -> f64 {
        self.floor_area * FT2_TO_M2 * CEILING_HEIGHT_M * AIR_VOLUMETRIC_HEAT
    }

    pub fn validate(&self) -> Result<(), HouseholdError> {
        let positive = [
            ("floor_area", self.floor_area),
            ("envelope_ua", self.envelope_ua),
            ("mass_capacitance", self.mass_capacitance),
            ("mass_surface_conductance", self.mass_surface_conductance),
            ("window_area", self.window_area),
            ("hvac_capacity", self.hvac_capacity),
            ("hvac_cop_cool", self.hvac_cop_cool),
            ("hvac_cop_heat", self.hvac_cop_heat),
            ("deadband", self.deadband),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(HouseholdError::InvalidParameter(format!(
                    "house {name} must be > 0, got {v}"
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.glazing_gain_fraction) {
            return Err(HouseholdError::InvalidParameter(format!(
                "glazing_gain_fraction {} outside [0, 1]",
                self.glazing_gain_fraction
            )));
        }
        // forward Euler at one-minute sub-steps must stay positive
        let dt = 3600.0 / SUBSTEPS_PER_HOUR as f64;
        if dt * (self.envelope_ua + self.mass_surface_conductance) > self.air_capacitance()
            || dt * self.mass_surface_conductance > self.mass_capacitance
        {
            return Err(HouseholdError::InvalidParameter(
                "conductances too large for the air/mass capacitances at one-minute sub-steps".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaterHeater {
    /// L
    pub tank_volume: f64,
    /// °C
    pub setpoint: f64,
    /// °C
    pub inlet_temp: f64,
    /// W
    pub heater_power: f64,
    /// W/°C
    pub standby_ua: f64,
}

impl WaterHeater {
    pub fn validate(&self) -> Result<(), HouseholdError> {
        if !(self.tank_volume > 0.0) {
            return Err(HouseholdError::InvalidParameter("tank_volume must be > 0".into()));
        }
        if !(self.setpoint > self.inlet_temp) {
            return Err(HouseholdError::InvalidParameter(
                "water heater setpoint must exceed inlet temperature".into(),
            ));
        }
        if !(self.heater_power > 0.0) {
            return Err(HouseholdError::InvalidParameter("heater_power must be > 0".into()));
        }
        if !(self.standby_ua >= 0.0) {
            return Err(HouseholdError::InvalidParameter("standby_ua must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZipLoad {
    /// W at nominal voltage
    pub base_power: f64,
    pub z_frac: f64,
    pub i_frac: f64,
    pub p_frac: f64,
}

impl ZipLoad {
    pub fn validate(&self) -> Result<(), HouseholdError> {
        let sum = self.z_frac + self.i_frac + self.p_frac;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(HouseholdError::InvalidParameter(format!(
                "ZIP fractions sum to {sum}, not 1"
            )));
        }
        if !(self.base_power >= 0.0) {
            return Err(HouseholdError::InvalidParameter("ZIP base_power must be >= 0".into()));
        }
        Ok(())
    }
}

/// 24-hour schedules indexed by local hour of day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSet {
    /// °C
    pub heating_setpoint: [f64; 24],
    /// °C
    pub cooling_setpoint: [f64; 24],
    /// L/h
    pub hot_water_draw: [f64; 24],
    pub zip_multiplier: [f64; 24],
    /// W
    pub internal_gain: [f64; 24],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleHour {
    pub heating_setpoint: f64,
    pub cooling_setpoint: f64,
    pub hot_water_draw: f64,
    pub zip_multiplier: f64,
    pub internal_gain: f64,
}

impl ScheduleSet {
    pub fn hour(&self, h: usize) -> ScheduleHour {
        ScheduleHour {
            heating_setpoint: self.heating_setpoint[h],
            cooling_setpoint: self.cooling_setpoint[h],
            hot_water_draw: self.hot_water_draw[h],
            zip_multiplier: self.zip_multiplier[h],
            internal_gain: self.internal_gain[h],
        }
    }

    pub fn validate(&self, deadband: f64) -> Result<(), HouseholdError> {
        for h in 0..24 {
            let s = self.hour(h);
            if s.cooling_setpoint < s.heating_setpoint + deadband {
                return Err(HouseholdError::InvalidParameter(format!(
                    "hour {h}: cooling setpoint {} is below heating setpoint {} + deadband {deadband}",
                    s.cooling_setpoint, s.heating_setpoint
                )));
            }
            if !(s.hot_water_draw >= 0.0 && s.zip_multiplier >= 0.0 && s.internal_gain >= 0.0) {
                return Err(HouseholdError::InvalidParameter(format!(
                    "hour {h}: draws, multipliers and gains must be >= 0"
                )));
            }
        }
        Ok(())
    }
}

/// Hourly electrical energy of one house, kWh.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsumptionTrace {
    pub kwh: [f64; 24],
    pub hvac: [f64; 24],
    pub water_heater: [f64; 24],
    pub zip: [f64; 24],
}

impl ConsumptionTrace {
    pub fn daily_kwh(&self) -> f64 {
        self.kwh.iter().sum()
    }
}

/// Everything needed to simulate one house.
#[derive(Debug, Clone, PartialEq)]
pub struct Household {
    pub house: HouseModel,
    pub water_heater: WaterHeater,
    pub zip: ZipLoad,
    pub schedule: ScheduleSet,
}

impl Household {
    pub fn validate(&self) -> Result<(), HouseholdError> {
        self.house.validate()?;
        self.water_heater.validate()?;
        self.zip.validate()?;
        self.schedule.validate(self.house.deadband)
    }

    pub fn simulate_day(
        &self,
        day: &WeatherDay,
        geo: &SiteGeometry,
        albedo: f64,
    ) -> Result<ConsumptionTrace, HouseholdError> {
        simulate_house_day(
            &self.house,
            &self.water_heater,
            &self.zip,
            &self.schedule,
            day,
            geo,
            albedo,
        )
    }
}

/// Steps the house through the 24 records of `day`. Schedules are looked up
/// by each record's local hour, so a window that starts mid-day still follows
/// the household's clock. Both temperature nodes start at the heating
/// setpoint of the first hour; voltage is nominal throughout.
pub fn simulate_house_day(
    house: &HouseModel,
    wh: &WaterHeater,
    zip: &ZipLoad,
    sched: &ScheduleSet,
    day: &WeatherDay,
    geo: &SiteGeometry,
    albedo: f64,
) -> Result<ConsumptionTrace, HouseholdError> {
    let records = day.records();
    let t0 = sched.heating_setpoint[records[0].local_hour()];
    let mut state = ThermalState::new(t0);
    let mut trace = ConsumptionTrace {
        kwh: [0.0; 24],
        hvac: [0.0; 24],
        water_heater: [0.0; 24],
        zip: [0.0; 24],
    };

    for (h, rec) in records.iter().enumerate() {
        let slot = sched.hour(rec.local_hour());
        let poa = plane_of_array(rec, geo, albedo);
        let indoor = state.air_temp;
        let step = thermal_step(&state, house, rec.dry_bulb, &slot, poa, 3600.0)
            .map_err(|_| HouseholdError::NonFiniteState { hour: h })?;
        state = step.state;

        trace.hvac[h] = step.hvac_kwh;
        trace.water_heater[h] = water_heater_energy(wh, slot.hot_water_draw, indoor);
        trace.zip[h] = zip_power(zip, 1.0, slot.zip_multiplier) / 1000.0;
        trace.kwh[h] = trace.hvac[h] + trace.water_heater[h] + trace.zip[h];
    }
    Ok(trace)
}
