//! One model house through one day of weather, broken down by end use.

use solargrid::fixture::{default_household, synthetic_year, TEN_CITIES};
use solargrid::weather::{CalendarDate, DEFAULT_ALBEDO};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let city = TEN_CITIES.iter().find(|c| c.name == "Almaty").unwrap();
    let geo = city.geometry();
    let day = synthetic_year(city).slice_day(CalendarDate::new(1, 15))?;
    let house = default_household();
    let trace = house.simulate_day(&day, &geo, DEFAULT_ALBEDO)?;

    println!("{} on 01/15, kWh per hour", city.name);
    println!(
        "{:>4} {:>7} {:>7} {:>7} {:>7} {:>7}",
        "hour", "T out", "hvac", "water", "zip", "total"
    );
    for (h, r) in day.records().iter().enumerate() {
        println!(
            "{:>4} {:>7.1} {:>7.3} {:>7.3} {:>7.3} {:>7.3}",
            h, r.dry_bulb, trace.hvac[h], trace.water_heater[h], trace.zip[h], trace.kwh[h]
        );
    }
    println!("daily total {:.1} kWh", trace.daily_kwh());
    Ok(())
}
