mod common;

use solargrid::config::{ConfigError, ScenarioConfig};
use solargrid::optimizer::{validate_areas, Violation};
use solargrid::pipeline::{area_per_household_ft2, report_summary, run_pipeline, write_outputs, PipelineError};
use solargrid::scenario::Alignment;

fn fixture() -> ScenarioConfig {
    ScenarioConfig::load(common::fixture_config()).unwrap()
}

#[test]
fn fixture_config_matches_the_bundled_household() {
    let cfg = fixture();
    let hh = solargrid::fixture::default_household();
    assert_eq!(cfg.household_for(&cfg.locations[0]).unwrap(), hh);
    assert_eq!(cfg.locations.len(), 10);
    for (loc, city) in cfg.locations.iter().zip(&solargrid::fixture::TEN_CITIES) {
        assert_eq!(loc.name, city.name);
        assert_eq!(loc.geometry, city.geometry());
        assert_eq!(loc.household_count, city.household_count);
        assert_eq!(loc.population, city.population);
    }
}

#[test]
fn fixture_runs_clean() {
    let out = run_pipeline(&fixture()).unwrap();
    out.verdict().unwrap();
    for e in &out.experiments {
        let sol = e.optimal().unwrap();
        assert!(sol.duality_gap_ok(&e.lp, 1e-6));
        let r = e.report.as_ref().unwrap();
        for share in r.energy_shares.iter().flatten() {
            if let Some(f) = e.experiment.policy.min_fraction {
                assert!(*share >= f - 1e-6);
            }
            if let Some(g) = e.experiment.policy.max_fraction {
                assert!(*share <= g + 1e-6);
            }
        }
    }
    let (_, ft2) = area_per_household_ft2(&out).unwrap();
    assert!((500.0..=5000.0).contains(&ft2), "{ft2}");
}

#[test]
fn shrinking_a_binding_area_fails_validation() {
    let out = run_pipeline(&fixture()).unwrap();
    let exp1 = &out.experiments[0];
    let sol = exp1.optimal().unwrap();
    let policy = exp1.experiment.policy;
    let mut checked = 0;
    for i in 0..sol.scale_factors.len() {
        if sol.scale_factors[i] <= 0.0 {
            continue;
        }
        let mut areas = sol.scale_factors.clone();
        areas[i] *= 0.9;
        let r = validate_areas(&out.matrices, &areas, &policy);
        assert!(!r.passed(), "location {i}");
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Balance { hour, .. } if (1..=24).contains(hour))));
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn local_day_alignment_is_infeasible_at_night() {
    let mut cfg = fixture();
    cfg.alignment = Alignment::LocalDay;
    let out = run_pipeline(&cfg).unwrap();
    let err = out.verdict().unwrap_err();
    assert!(matches!(err, PipelineError::SolveInfeasible { .. }), "{err}");
    assert_eq!(err.exit_code(), 4);
    assert!(err.to_string().contains("hour 1 "), "{err}");
}

#[test]
fn population_warnings_follow_the_config() {
    let cfg = fixture();
    let out = run_pipeline(&cfg).unwrap();
    let derived = cfg.locations.iter().filter(|l| l.household_count.is_none()).count();
    let warned = out
        .warnings
        .iter()
        .filter(|w| w.contains("derived from population"))
        .count();
    assert_eq!(derived, warned);
    for w in &out.warnings {
        assert!(cfg.locations.iter().any(|l| w.starts_with(&l.name)), "{w}");
    }
}

#[test]
fn no_experiments_is_reported_and_succeeds() {
    let mut cfg = fixture();
    cfg.experiments.clear();
    let out = run_pipeline(&cfg).unwrap();
    out.verdict().unwrap();
    assert!(report_summary(&out).contains("no experiments selected"));
    let dir = tempfile::tempdir().unwrap();
    let written = write_outputs(&out, dir.path()).unwrap();
    assert_eq!(written.len(), 3);
    let totals = std::fs::read_to_string(dir.path().join("hourly_totals.csv")).unwrap();
    assert!(totals.lines().skip(1).all(|l| l.split(',').nth(2) == Some("0")));
}

#[test]
fn missing_weather_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(common::fixture_config()).unwrap();
    std::fs::write(dir.path().join("config.toml"), text).unwrap();
    match ScenarioConfig::load(dir.path().join("config.toml")) {
        Err(ConfigError::MissingWeatherFile { path, location }) => {
            assert_eq!(location, "Los Angeles");
            assert!(path.ends_with("weather/los_angeles.csv"), "{path}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn config_rejects_bad_input() {
    let base = common::fixture_dir();
    let text = std::fs::read_to_string(common::fixture_config()).unwrap();
    for (from, to) in [
        ("date = \"02/01\"", "date = \"02/30\""),
        ("experiments = [1, 2, 3, 4]", "experiments = [5]"),
        ("name = \"Dakar\"", "name = \"London\""),
        ("z_frac = 0.3", "z_frac = 0.5"),
        ("population = 1030000", "population = 1030000\nhouse = \"mansion\""),
        ("efficiency = 0.15", "efficiency = 1.5"),
        ("tz_offset = 4", "tz_offset = 4.5"),
    ] {
        let bad = text.replacen(from, to, 1);
        assert_ne!(bad, text, "{from}");
        let result = ScenarioConfig::parse(&bad, &base).and_then(|c| c.validate());
        assert!(result.is_err(), "{to} accepted");
    }
    assert!(ScenarioConfig::parse("date = \"02/01\"\nlocations = []\n", &base)
        .unwrap()
        .validate()
        .is_err());
    assert!(matches!(
        ScenarioConfig::parse("date = ", &base),
        Err(ConfigError::Parse(_))
    ));
    assert!(ScenarioConfig::parse(&format!("colour = 1\n{text}"), &base).is_err());
}

#[test]
fn custom_experiments_are_solved() {
    let base = common::fixture_dir();
    let text = std::fs::read_to_string(common::fixture_config()).unwrap().replacen(
        "output_dir = \"out\"",
        "output_dir = \"out\"\n\n[[custom_experiments]]\nname = \"half\"\nmin_fraction = 0.5\n",
        1,
    );
    let cfg = ScenarioConfig::parse(&text, &base).unwrap();
    cfg.validate().unwrap();
    assert_eq!(cfg.experiments.last().unwrap().id, "half");
    let out = run_pipeline(&cfg).unwrap();
    out.verdict().unwrap();
    let half = out.experiments.last().unwrap().optimal().unwrap().objective_value;
    let exp2 = out.experiments[1].optimal().unwrap().objective_value;
    assert!(half >= exp2 * (1.0 - 1e-9));
}
