//! Hourly output of one square metre of panel, and how tilt changes it.

use solargrid::fixture::{synthetic_year, TEN_CITIES};
use solargrid::pv::{simulate_unit_panel_day, PanelSpec};
use solargrid::weather::{CalendarDate, DEFAULT_ALBEDO};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = PanelSpec::default();
    let city = TEN_CITIES.iter().find(|c| c.name == "Sydney").unwrap();
    let day = synthetic_year(city).slice_day(CalendarDate::new(2, 1))?;

    let mut geo = city.geometry();
    let tilted = simulate_unit_panel_day(&spec, &day, &geo, DEFAULT_ALBEDO);
    geo.panel_tilt = 0.0;
    let flat = simulate_unit_panel_day(&spec, &day, &geo, DEFAULT_ALBEDO);

    println!(
        "{} 02/01, Wh/m2 (tilt {}° facing north vs flat)",
        city.name,
        city.geometry().panel_tilt
    );
    for h in 0..24 {
        let (t, f) = (tilted.kwh_per_m2[h] * 1000.0, flat.kwh_per_m2[h] * 1000.0);
        if t > 0.0 || f > 0.0 {
            println!("{h:>2}:00 {t:>7.1} {f:>7.1}");
        }
    }
    println!(
        "daily {:.3} vs {:.3} kWh/m2",
        tilted.daily_kwh_per_m2(),
        flat.daily_kwh_per_m2()
    );
    Ok(())
}
