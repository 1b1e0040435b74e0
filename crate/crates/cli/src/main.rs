//! `nswave`: scenario runner and invariant checker for nonstatic light-wave
//! datasets. Exit codes: 0 success, 2 config error, 3 computation error,
//! 4 check failures.

mod config;
mod scenario;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nswave_core::checks::{self, Level};

use config::{ConfigError, RawConfig, ScenarioConfig};
use scenario::Scenario;

#[derive(Parser)]
#[command(name = "nswave", version, about = "Nonstatic light-wave dataset generator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration file; omitted fields take the standard defaults.
    #[arg(long)]
    config: Option<String>,
    /// Output path prefix (overrides `output.prefix` from the config).
    #[arg(long)]
    out: Option<String>,
    /// Worker threads; affects speed only, never output bytes.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckLevel {
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Total/dynamical/geometric phase curves over time.
    PhaseEvolution(RunArgs),
    /// |psi_n(q, t)|^2 over a (t, q) grid.
    DensityMap(RunArgs),
    /// Geometric phase and its rate over time.
    GeometricPhase(RunArgs),
    /// Field phase, amplitude, and A/E/B over a (t, x) grid.
    FieldTrace(RunArgs),
    /// A/E/B over a (t, x) grid.
    FieldMap(RunArgs),
    /// Two-state superposition density and cross term over (t, q).
    Superposition(RunArgs),
    /// Two-mode total electric field over (t, x).
    Interference(RunArgs),
    /// Run the invariant and acceptance suite.
    Check {
        #[arg(long, value_enum, default_value_t = CheckLevel::Fast)]
        level: CheckLevel,
    },
}

fn load_config(args: &RunArgs) -> Result<ScenarioConfig, ConfigError> {
    let raw = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError::MalformedDocument(format!("{path}: {e}")))?;
            RawConfig::from_toml(&text)?
        }
        None => RawConfig::default(),
    };
    raw.validate(args.out.as_deref())
}

fn run(scenario: Scenario, args: &RunArgs) -> ExitCode {
    let cfg = match load_config(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    match scenario::run_scenario(scenario, &cfg, args.threads) {
        Ok(out) => {
            println!("wrote {}", out.csv_path);
            println!("wrote {}", out.manifest_path);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("computation error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run_checks(level: CheckLevel) -> ExitCode {
    let level = match level {
        CheckLevel::Fast => Level::Fast,
        CheckLevel::Full => Level::Full,
    };
    let outcomes = checks::run(level);
    let mut all_ok = true;
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} {:>4} {}: {}", o.id, o.name, o.detail);
        all_ok &= o.passed;
    }
    if all_ok {
        println!("all {} checks passed", outcomes.len());
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::PhaseEvolution(a) => run(Scenario::PhaseEvolution, a),
        Command::DensityMap(a) => run(Scenario::DensityMap, a),
        Command::GeometricPhase(a) => run(Scenario::GeometricPhase, a),
        Command::FieldTrace(a) => run(Scenario::FieldTrace, a),
        Command::FieldMap(a) => run(Scenario::FieldMap, a),
        Command::Superposition(a) => run(Scenario::Superposition, a),
        Command::Interference(a) => run(Scenario::Interference, a),
        Command::Check { level } => run_checks(*level),
    }
}
