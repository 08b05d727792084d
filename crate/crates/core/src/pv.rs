//! Output of a unitized fixed-axis panel.

use serde::{Deserialize, Serialize};

use crate::weather::{plane_of_array, SiteGeometry, WeatherDay};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PanelSpec {
    /// Conversion efficiency at standard test conditions.
    pub efficiency: f64,
    /// Relative power change per °C of cell temperature above 25 °C.
    pub temp_coeff: f64,
    /// Nominal operating cell temperature, °C.
    pub noct: f64,
    /// m²; used as the per-unit cost weight in the sizing LP.
    pub unit_area: f64,
}

impl Default for PanelSpec {
    /// Monocrystalline silicon at 15 % efficiency.
    fn default() -> Self {
        Self {
            efficiency: 0.15,
            temp_coeff: -0.004,
            noct: 45.0,
            unit_area: 1.0,
        }
    }
}

impl PanelSpec {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.efficiency > 0.0 && self.efficiency < 1.0) {
            return Err(format!("panel efficiency {} outside (0, 1)", self.efficiency));
        }
        if !(self.unit_area > 0.0 && self.unit_area.is_finite()) {
            return Err(format!("panel unit_area {} must be > 0", self.unit_area));
        }
        if !(30.0..=60.0).contains(&self.noct) {
            return Err(format!("panel noct {} outside [30, 60]", self.noct));
        }
        if !self.temp_coeff.is_finite() {
            return Err("panel temp_coeff must be finite".into());
        }
        Ok(())
    }
}

/// Hourly energy of one m² of panel, kWh/m².
#[derive(Debug, Clone, PartialEq)]
pub struct ProductionTrace {
    pub kwh_per_m2: [f64; 24],
}

impl ProductionTrace {
    pub fn daily_kwh_per_m2(&self) -> f64 {
        self.kwh_per_m2.iter().sum()
    }
}

/// Cell temperature from the NOCT rating, °C.
pub fn cell_temperature(poa: f64, ambient: f64, spec: &PanelSpec) -> f64 {
    ambient + poa * (spec.noct - 20.0) / 800.0
}

/// DC output per m² of panel, W/m², derated linearly with cell temperature.
pub fn panel_power(poa: f64, ambient: f64, spec: &PanelSpec) -> f64 {
    let derate = 1.0 + spec.temp_coeff * (cell_temperature(poa, ambient, spec) - 25.0);
    (poa * spec.efficiency * derate).max(0.0)
}

pub fn simulate_unit_panel_day(spec: &PanelSpec, day: &WeatherDay, geo: &SiteGeometry, albedo: f64) -> ProductionTrace {
    let mut kwh_per_m2 = [0.0; 24];
    for (slot, rec) in kwh_per_m2.iter_mut().zip(day.records()) {
        let poa = plane_of_array(rec, geo, albedo);
        *slot = panel_power(poa, rec.dry_bulb, spec) / 1000.0;
    }
    ProductionTrace { kwh_per_m2 }
}
