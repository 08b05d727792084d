//! Regenerates the synthetic weather files of the bundled ten-city fixture.
//!
//!     cargo run --example generate_fixture -- crates/core/fixtures/ten_city/weather

use std::path::PathBuf;

use solargrid::fixture::{write_weather_files, TEN_CITIES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/ten_city/weather"));
    write_weather_files(&dir)?;
    for city in &TEN_CITIES {
        println!("{}", dir.join(format!("{}.csv", city.slug)).display());
    }
    Ok(())
}
