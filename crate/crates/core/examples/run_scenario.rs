//! The whole pipeline from a config file, writing every output file.
//!
//!     cargo run --example run_scenario -- crates/core/fixtures/ten_city/config.toml /tmp/out

use std::path::PathBuf;

use solargrid::config::ScenarioConfig;
use solargrid::pipeline::{run_pipeline, write_outputs};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/ten_city/config.toml"));
    let cfg = ScenarioConfig::load(&config)?;
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("solargrid-out"));

    let out = run_pipeline(&cfg)?;
    for path in write_outputs(&out, &dir)? {
        println!("wrote {}", path.display());
    }
    println!();
    print!("{}", std::fs::read_to_string(dir.join("run_report.txt"))?);
    out.verdict()?;
    Ok(())
}
