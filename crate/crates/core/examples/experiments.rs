//! The four share policies on the bundled ten-city scenario, side by side.
//!
//!     cargo run --release --example experiments -- [config.toml]

use std::path::PathBuf;

use solargrid::config::ScenarioConfig;
use solargrid::pipeline::run_pipeline;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/ten_city/config.toml"));
    let cfg = ScenarioConfig::load(&path)?;
    let out = run_pipeline(&cfg)?;

    print!("{:<14}", "km2");
    for e in &out.experiments {
        print!("{:>10}", e.experiment.id);
    }
    println!();
    for (i, name) in out.matrices.names.iter().enumerate() {
        print!("{name:<14}");
        for e in &out.experiments {
            match e.optimal() {
                Some(s) => print!("{:>10.2}", s.scale_factors[i] / 1e6),
                None => print!("{:>10}", "-"),
            }
        }
        println!();
    }
    print!("{:<14}", "total");
    for e in &out.experiments {
        match e.optimal() {
            Some(s) => print!("{:>10.2}", s.scale_factors.iter().sum::<f64>() / 1e6),
            None => print!("{:>10}", "infeasible"),
        }
    }
    println!();
    if let Err(e) = out.verdict() {
        println!("\n{e}");
    }
    Ok(())
}
