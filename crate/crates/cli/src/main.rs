use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use uamsim_core::{experiments, movement_log, report, scenario, Airspace, HaltReason};

/// Tick-based eVTOL trajectory simulator.
#[derive(Debug, Parser)]
#[command(name = "uamsim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load a scenario file, simulate it and emit the report.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[command(flatten)]
        output: Output,
        /// Tick cap for non-terminating scenarios.
        #[arg(long)]
        max_ticks: Option<u64>,
        /// Force every waypoint and take-off fix to one flight level (ft).
        #[arg(long)]
        shared_level: Option<f64>,
    },
    /// Check a scenario file against the schema without simulating.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Run one of the built-in experiment scenarios.
    Demo {
        #[arg(long, value_enum)]
        experiment: Experiment,
        #[command(flatten)]
        output: Output,
        /// Also write the generated scenario to this file.
        #[arg(long)]
        save_scenario: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
struct Output {
    /// Movement log CSV destination.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Report JSON destination; stdout when omitted.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Experiment {
    /// Five vehicles on parallel and crossing corridors.
    #[value(name = "1")]
    One,
    /// Two crossing vehicles pinned to 1000 ft.
    #[value(name = "2")]
    Two,
    /// The crossing pair with a detour waypoint for vehicle 1.
    #[value(name = "2-fixed")]
    TwoFixed,
}

fn simulate(mut airspace: Airspace, output: &Output) -> Result<ExitCode> {
    let report = airspace.simulate()?;
    if let Some(path) = &output.log {
        movement_log::write_movement_log(airspace.movement_log(), path)
            .with_context(|| format!("writing movement log {}", path.display()))?;
    }
    match &output.report {
        Some(path) => report::write_report(&report, path)
            .with_context(|| format!("writing report {}", path.display()))?,
        None => print!("{}", report::report_json(&report)),
    }
    Ok(match report.halt_reason {
        HaltReason::AllDelivered => ExitCode::SUCCESS,
        HaltReason::Conflict => {
            let pairs: Vec<String> = report
                .conflicts
                .iter()
                .map(|c| format!("[{}, {}]", c.a, c.b))
                .collect();
            eprintln!(
                "unsafe: conflict at tick {}: {}",
                report.total_ticks,
                pairs.join(" ")
            );
            ExitCode::from(2)
        }
        HaltReason::MaxTicks => {
            eprintln!("inconclusive: reached {} ticks", report.total_ticks);
            ExitCode::from(3)
        }
    })
}

fn load(path: &Path) -> Result<Airspace> {
    let json =
        fs::read_to_string(path).with_context(|| format!("reading scenario {}", path.display()))?;
    scenario::parse_scenario(&json).with_context(|| format!("invalid scenario {}", path.display()))
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run {
            scenario,
            output,
            max_ticks,
            shared_level,
        } => {
            let mut airspace = load(&scenario)?;
            if let Some(level) = shared_level {
                airspace.force_shared_level(level)?;
            }
            if let Some(n) = max_ticks {
                airspace = airspace.with_max_ticks(n);
            }
            simulate(airspace, &output)
        }
        Command::Validate { scenario } => {
            let airspace = load(&scenario)?;
            eprintln!("{}: {} vehicles, ok", scenario.display(), airspace.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Demo {
            experiment,
            output,
            save_scenario,
        } => {
            let airspace = match experiment {
                Experiment::One => experiments::experiment_one(),
                Experiment::Two => experiments::experiment_two_shared_level(1000.0),
                Experiment::TwoFixed => experiments::experiment_two_detour(),
            };
            if let Some(path) = save_scenario {
                scenario::save_scenario(&airspace, &path)?;
            }
            simulate(airspace, &output)
        }
    }
}

fn main() -> ExitCode {
    // usage errors share the input-error code; 2 is reserved for unsafe runs
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
