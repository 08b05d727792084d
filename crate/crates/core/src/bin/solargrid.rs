use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use solargrid::config::{Experiment, ScenarioConfig};
use solargrid::optimizer::{build_lp, write_lp_dump};
use solargrid::pipeline::{run_pipeline, simulate_locations, write_outputs, PipelineError};

#[derive(Parser)]
#[command(name = "solargrid", version, about = "Size solar panels across a multi-city grid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate, solve the selected experiments and write the outputs.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Run only this standard experiment instead of the configured list.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        experiment: Option<u32>,
        /// Output directory; overrides `output_dir` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and check a config without simulating.
    ValidateConfig { path: PathBuf },
    /// Print the plain-text LP for one standard experiment.
    LpDump {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        experiment: u32,
    },
}

fn run(cli: Cli) -> Result<(), PipelineError> {
    match cli.command {
        Command::Run {
            config,
            experiment,
            out,
        } => {
            let mut cfg = ScenarioConfig::load(&config)?;
            if let Some(k) = experiment {
                cfg.select_experiments(&[k])?;
            }
            let outputs = run_pipeline(&cfg)?;
            let dir = out.unwrap_or_else(|| cfg.output_dir.clone());
            for path in write_outputs(&outputs, &dir)? {
                eprintln!("wrote {}", path.display());
            }
            outputs.verdict()
        }
        Command::ValidateConfig { path } => {
            let cfg = ScenarioConfig::load(&path)?;
            println!(
                "{}: ok ({} locations, {} experiments)",
                path.display(),
                cfg.locations.len(),
                cfg.experiments.len()
            );
            Ok(())
        }
        Command::LpDump { config, experiment } => {
            let cfg = ScenarioConfig::load(&config)?;
            let exp = Experiment::standard(experiment).expect("range checked by clap");
            let (_, matrices) = simulate_locations(&cfg)?;
            let lp = build_lp(&matrices, &exp.policy, cfg.panel.unit_area).map_err(|source| PipelineError::Solver {
                experiment: exp.id.clone(),
                source,
            })?;
            print!("{}", write_lp_dump(&lp));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
