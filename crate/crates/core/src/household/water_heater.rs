use super::WaterHeater;

/// Specific heat of water per litre, J/(L·°C).
pub const WATER_HEAT_CAPACITY: f64 = 4186.0;

/// Electrical energy (kWh) to reheat `draw_l` litres of inlet water to the
/// tank setpoint and cover one hour of standby loss to `ambient`, capped at
/// one hour of element power. Standby loss is zero when the surroundings are
/// warmer than the tank.
pub fn water_heater_energy(wh: &WaterHeater, draw_l: f64, ambient: f64) -> f64 {
    let draw_j = draw_l * WATER_HEAT_CAPACITY * (wh.setpoint - wh.inlet_temp);
    let standby_j = (wh.standby_ua * (wh.setpoint - ambient) * 3600.0).max(0.0);
    let cap_j = wh.heater_power * 3600.0;
    (draw_j + standby_j).min(cap_j) / 3.6e6
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heater(standby_ua: f64) -> WaterHeater {
        WaterHeater {
            tank_volume: 190.0,
            setpoint: 55.0,
            inlet_temp: 15.0,
            heater_power: 4500.0,
            standby_ua,
        }
    }

    #[test]
    fn idle_at_setpoint_uses_nothing() {
        assert_eq!(water_heater_energy(&heater(2.0), 0.0, 55.0), 0.0);
    }

    #[test]
    fn hundred_litre_draw() {
        // 100 L * 4186 J/(L·°C) * 40 °C = 16.744 MJ
        let wh = WaterHeater {
            heater_power: 6000.0,
            ..heater(0.0)
        };
        let kwh = water_heater_energy(&wh, 100.0, 20.0);
        assert!((kwh - 16.744e6 / 3.6e6).abs() < 1e-12);
        assert!((kwh - 4.651).abs() < 1e-3);
    }

    #[test]
    fn element_power_caps_the_hour() {
        assert_eq!(water_heater_energy(&heater(2.0), 1000.0, 20.0), 4.5);
    }

    #[test]
    fn standby_loss_floors_at_zero() {
        assert_eq!(water_heater_energy(&heater(3.0), 0.0, 70.0), 0.0);
        let kwh = water_heater_energy(&heater(3.0), 0.0, 25.0);
        assert!((kwh - 3.0 * 30.0 / 1000.0).abs() < 1e-12);
    }
}
