//! Replays a published 24-hour consumption/production series as a single
//! aggregate location with unit area, and checks the hourly balance.

use solargrid::optimizer::{validate_areas, ConstraintPolicy};
use solargrid::scenario::{hourly_totals, write_hourly_totals, ScenarioMatrices};

const SERIES: [(f64, f64); 24] = [
    (49813.0, 66449.0),
    (29990.0, 53683.0),
    (43568.0, 47961.0),
    (45010.0, 45010.0),
    (32106.0, 32110.0),
    (25547.0, 38166.0),
    (36009.0, 51664.0),
    (37574.0, 47928.0),
    (57347.0, 58913.0),
    (46638.0, 46661.0),
    (45316.0, 49624.0),
    (38726.0, 52790.0),
    (31021.0, 57217.0),
    (35586.0, 50006.0),
    (26953.0, 44652.0),
    (48428.0, 48431.0),
    (50240.0, 53595.0),
    (66904.0, 66928.0),
    (43897.0, 77572.0),
    (49891.0, 91494.0),
    (42928.0, 93238.0),
    (46343.0, 87249.0),
    (51142.0, 90339.0),
    (43344.0, 72324.0),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cons: Vec<f64> = SERIES.iter().map(|s| s.0).collect();
    let prod: Vec<f64> = SERIES.iter().map(|s| s.1).collect();
    let m = ScenarioMatrices::from_columns(vec!["grid".into()], vec![1], &[cons], &[prod])?;

    write_hourly_totals(&hourly_totals(&m, &[1.0]), std::io::stdout().lock())?;
    let report = validate_areas(&m, &[1.0], &ConstraintPolicy::default());
    println!(
        "\nbalance {}; tightest hour {} with {} MWh to spare",
        if report.passed() { "holds" } else { "violated" },
        report.min_slack_hour,
        report.min_slack
    );
    Ok(())
}
