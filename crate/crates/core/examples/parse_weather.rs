//! Reads a TMY3 file, prints the station and one day of records.
//!
//!     cargo run --example parse_weather -- [path] [MM/DD]

use std::path::PathBuf;

use solargrid::weather::{read_tmy3, CalendarDate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/ten_city/weather/london.csv"));
    let date = args
        .next()
        .as_deref()
        .and_then(CalendarDate::parse)
        .unwrap_or(CalendarDate::new(6, 21));

    let year = read_tmy3(&path)?;
    let st = &year.station;
    println!(
        "{} {} ({}) lat {:?} lon {:?} tz {:?}",
        st.id, st.name, st.state, st.latitude, st.longitude, st.tz_offset
    );

    let day = year.slice_day(date)?;
    println!(
        "{:>16}  {:>5} {:>5} {:>5} {:>6}",
        "hour beginning", "GHI", "DNI", "DHI", "T"
    );
    for r in day.records() {
        println!(
            "{:>16}  {:>5} {:>5} {:>5} {:>6.1}",
            r.timestamp.format("%m/%d %H:%M"),
            r.ghi,
            r.dni,
            r.dhi,
            r.dry_bulb
        );
    }
    let insolation: f64 = day.records().iter().map(|r| r.ghi).sum::<f64>() / 1000.0;
    println!("horizontal insolation {insolation:.2} kWh/m2");
    Ok(())
}
