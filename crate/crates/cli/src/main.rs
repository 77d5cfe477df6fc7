use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ottoqft_cli::{execute, parse_overrides, read_config, spec_for_mode, CliError};

#[derive(Parser)]
#[command(
    name = "ottoqft",
    version,
    about = "Quantum Otto cycle of a delta-coupled Unruh-DeWitt detector"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Override a config key.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run every oracle cross-check and print a pass/fail report.
    Verify {
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the stroke ledger of one cycle as `key = value` lines.
    Point {
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Sweep { config, set, jobs } => {
            let spec = read_config(&config, &parse_overrides(&set)?)?;
            execute(&spec, jobs, &mut stdout)
        }
        Command::Verify { set, jobs } => {
            let spec = spec_for_mode("verify", &parse_overrides(&set)?)?;
            execute(&spec, jobs, &mut stdout)
        }
        Command::Point { set } => {
            let spec = spec_for_mode("single-point", &parse_overrides(&set)?)?;
            execute(&spec, None, &mut stdout)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ottoqft: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
