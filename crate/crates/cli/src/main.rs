use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use slicelab::verify::{
    cmd_all, cmd_fibers, cmd_orbits, cmd_proptests, cmd_slices, Config, Report, VerifyError,
};

#[derive(Parser)]
#[command(
    name = "slice-lab",
    version,
    about = "Reproduce the orbit, slice and fibre tables as checked reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Height bound of the rational line search in slices.
    #[arg(long, global = true, default_value_t = 24)]
    height: u32,

    /// Seed of the sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for the line search.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Orbit dimensions and classes of the nilpotent representatives.
    Orbits,
    /// Slices, their stratum lines and the slice inductions.
    Slices,
    /// The 4-ality tower, fibres of the projection and ab-diagrams.
    Fibers,
    /// Sampled property checks of every module.
    Proptests,
    /// Every report above.
    All,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Json,
    Md,
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn run(cli: &Cli) -> Result<Report, VerifyError> {
    let config = Config {
        height: cli.height,
        seed: cli.seed,
        workers: cli.workers,
    };
    config.validate()?;
    match cli.command {
        Command::Orbits => cmd_orbits(&config),
        Command::Slices => cmd_slices(&config),
        Command::Fibers => cmd_fibers(&config),
        Command::Proptests => cmd_proptests(&config),
        Command::All => cmd_all(&config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("slice-lab: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("slice-lab: cannot write report: {e}");
        return ExitCode::from(EXIT_CONFIG);
    }
    let s = report.summary();
    eprintln!(
        "{} passed, {} failed, {} skipped",
        s.pass, s.fail, s.skipped
    );
    if s.fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
