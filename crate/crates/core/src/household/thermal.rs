use super::{HouseModel, ScheduleHour};

/// Forward-Euler sub-steps per simulated hour.
pub const SUBSTEPS_PER_HOUR: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HvacMode {
    Off,
    Heat,
    Cool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    pub air_temp: f64,
    pub mass_temp: f64,
    /// Thermostat mode carried between steps for hysteresis.
    pub mode: HvacMode,
}

impl ThermalState {
    pub fn new(temp: f64) -> Self {
        Self {
            air_temp: temp,
            mass_temp: temp,
            mode: HvacMode::Off,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub state: ThermalState,
    /// Electrical energy drawn by the HVAC unit over the step.
    pub hvac_kwh: f64,
    /// Mode in effect at the end of the step.
    pub mode: HvacMode,
    pub heating_substeps: usize,
    pub cooling_substeps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonFinite;

fn next_mode(prev: HvacMode, air: f64, sched: &ScheduleHour, deadband: f64) -> HvacMode {
    let half = deadband / 2.0;
    let heat_on = air < sched.heating_setpoint - half;
    let cool_on = air > sched.cooling_setpoint + half;
    match prev {
        HvacMode::Heat if air < sched.heating_setpoint + half => HvacMode::Heat,
        HvacMode::Cool if air > sched.cooling_setpoint - half => HvacMode::Cool,
        _ if heat_on => HvacMode::Heat,
        _ if cool_on => HvacMode::Cool,
        _ => HvacMode::Off,
    }
}

/// Advances the air/mass network by `dt` seconds.
///
/// The air node exchanges heat with the outdoors through `envelope_ua` and
/// with the interior mass through `mass_surface_conductance`; solar gains
/// through glazing and scheduled internal gains land on the air node. The
/// thermostat is evaluated every sub-step: it engages heating below
/// `heating_setpoint - deadband/2` and releases above `heating_setpoint +
/// deadband/2` (mirror image for cooling). While engaged the unit delivers its
/// full thermal capacity and draws capacity / COP electrically.
pub fn thermal_step(
    state: &ThermalState,
    house: &HouseModel,
    outdoor: f64,
    sched: &ScheduleHour,
    poa: f64,
    dt: f64,
) -> Result<StepOutcome, NonFinite> {
    let h = dt / SUBSTEPS_PER_HOUR as f64;
    let c_air = house.air_capacitance();
    let gains = house.glazing_gain_fraction * house.window_area * poa + sched.internal_gain;

    let mut air = state.air_temp;
    let mut mass = state.mass_temp;
    let mut mode = state.mode;
    let mut electrical_j = 0.0;
    let (mut heating, mut cooling) = (0, 0);

    for _ in 0..SUBSTEPS_PER_HOUR {
        mode = next_mode(mode, air, sched, house.deadband);
        let q_hvac = match mode {
            HvacMode::Heat => {
                heating += 1;
                electrical_j += house.hvac_capacity * h / house.hvac_cop_heat;
                house.hvac_capacity
            }
            HvacMode::Cool => {
                cooling += 1;
                electrical_j += house.hvac_capacity * h / house.hvac_cop_cool;
                -house.hvac_capacity
            }
            HvacMode::Off => 0.0,
        };
        let to_mass = house.mass_surface_conductance * (air - mass);
        let d_air = house.envelope_ua * (outdoor - air) - to_mass + gains + q_hvac;
        air += h * d_air / c_air;
        mass += h * to_mass / house.mass_capacitance;
        if !(air.is_finite() && mass.is_finite()) {
            return Err(NonFinite);
        }
    }

    let state = ThermalState {
        air_temp: air,
        mass_temp: mass,
        mode,
    };
    Ok(StepOutcome {
        state,
        hvac_kwh: electrical_j / 3.6e6,
        mode,
        heating_substeps: heating,
        cooling_substeps: cooling,
    })
}
