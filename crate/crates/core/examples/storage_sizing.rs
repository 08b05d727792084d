//! How much battery each city would need to run on its own panels alone.

use solargrid::config::ScenarioConfig;
use solargrid::pipeline::simulate_locations;
use solargrid::storage::estimate_storage;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/ten_city/config.toml");
    let cfg = ScenarioConfig::load(path)?;
    let (_, m) = simulate_locations(&cfg)?;

    println!(
        "{:<14} {:>12} {:>12} {:>8}",
        "location", "demand GWh", "storage GWh", "ratio"
    );
    for i in 0..m.n() {
        let demand = m.daily_consumption(i);
        match estimate_storage(m.consumption.column(i), m.production.column(i)) {
            Ok(e) => println!(
                "{:<14} {:>12.2} {:>12.2} {:>8.2}",
                m.names[i],
                demand / 1000.0,
                e.storage / 1000.0,
                e.storage / demand
            ),
            Err(err) => println!("{:<14} {:>12.2}  {err}", m.names[i], demand / 1000.0),
        }
    }
    Ok(())
}
