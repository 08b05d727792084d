mod common;

use common::steady_cooling_kwh_per_hour;
use proptest::prelude::*;
use solargrid::fixture::default_household;
use solargrid::household::{thermal_step, HvacMode, ScheduleHour, ThermalState};

fn hour(heat: f64, cool: f64, gain: f64) -> ScheduleHour {
    ScheduleHour {
        heating_setpoint: heat,
        cooling_setpoint: cool,
        hot_water_draw: 0.0,
        zip_multiplier: 0.0,
        internal_gain: gain,
    }
}

#[test]
fn adiabatic_house_holds_temperature() {
    let mut house = default_household().house;
    house.envelope_ua = 0.0;
    house.glazing_gain_fraction = 0.0;
    let mut state = ThermalState::new(21.3);
    for _ in 0..24 {
        let out = thermal_step(&state, &house, -20.0, &hour(10.0, 30.0, 0.0), 800.0, 3600.0).unwrap();
        assert_eq!(out.hvac_kwh, 0.0);
        state = out.state;
    }
    assert!((state.air_temp - 21.3).abs() < 1e-9);
    assert!((state.mass_temp - 21.3).abs() < 1e-9);
}

#[test]
fn steady_state_cooling_matches_envelope_load() {
    let house = default_household().house;
    let (t_out, setpoint) = (36.0, 25.0);
    let sched = hour(10.0, setpoint, 0.0);
    let mut state = ThermalState::new(setpoint);
    // settle the mass node, then average over many thermostat cycles
    for _ in 0..24 * 10 {
        state = thermal_step(&state, &house, t_out, &sched, 0.0, 3600.0).unwrap().state;
    }
    let hours = 24 * 20;
    let mut kwh = 0.0;
    for _ in 0..hours {
        let out = thermal_step(&state, &house, t_out, &sched, 0.0, 3600.0).unwrap();
        kwh += out.hvac_kwh;
        state = out.state;
    }
    let per_hour = kwh / hours as f64;
    let expected = steady_cooling_kwh_per_hour(house.envelope_ua, t_out, setpoint, house.hvac_cop_cool);
    assert!((expected - 0.9166666).abs() < 1e-6);
    assert!(
        (per_hour - expected).abs() <= 0.02 * expected,
        "{per_hour} kWh/h vs {expected}"
    );
}

#[test]
fn heating_and_cooling_are_exclusive() {
    let house = default_household().house;
    let cold = thermal_step(
        &ThermalState::new(15.0),
        &house,
        -5.0,
        &hour(20.0, 25.0, 0.0),
        0.0,
        3600.0,
    )
    .unwrap();
    assert!(cold.heating_substeps > 0 && cold.cooling_substeps == 0);
    let hot = thermal_step(
        &ThermalState::new(30.0),
        &house,
        40.0,
        &hour(20.0, 25.0, 0.0),
        0.0,
        3600.0,
    )
    .unwrap();
    assert!(hot.cooling_substeps > 0 && hot.heating_substeps == 0);
    assert_ne!(hot.mode, HvacMode::Heat);
}

proptest! {
    /// With the thermostat out of range and no gains, both nodes move
    /// monotonically toward the outdoor temperature and never cross it.
    #[test]
    fn free_floating_relaxes_monotonically(start in -10.0f64..40.0, outdoor in -10.0f64..40.0) {
        let house = default_household().house;
        let sched = hour(-100.0, 100.0, 0.0);
        let mut state = ThermalState::new(start);
        let mut gap = (start - outdoor).abs();
        for _ in 0..48 {
            let out = thermal_step(&state, &house, outdoor, &sched, 0.0, 3600.0).unwrap();
            prop_assert_eq!(out.hvac_kwh, 0.0);
            state = out.state;
            let g = (state.air_temp - outdoor).abs();
            prop_assert!(g <= gap + 1e-9);
            prop_assert!((state.air_temp - outdoor) * (start - outdoor) >= -1e-9);
            gap = g;
        }
    }
}
