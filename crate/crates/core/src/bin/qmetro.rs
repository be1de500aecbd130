use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qmetro::diagnostics::run_diagnostics;
use qmetro::sweep::{
    run_preset, run_sweep, summarize, OutputFormat, Preset, SweepError, SweepOptions,
};

/// Quantum Cramér-Rao bound sweeps for photon-added GHZ-type coherent states.
#[derive(Parser)]
#[command(name = "qmetro", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep protocols over a parameter grid. Unset flags fall back to
    /// the file named by QMETRO_CONFIG, then to built-in defaults.
    Sweep(SweepFlags),
    /// Reproduce the axes of a published figure.
    Preset {
        name: String,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Write the closed-form vs brute-force comparison report (JSON).
    Diagnostics {
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SweepFlags {
    /// Comma-separated subset of independent,linear,nonlinear,homodyne,oracle
    #[arg(long)]
    protocols: Option<String>,
    /// start:stop:steps, or a single value
    #[arg(long)]
    alpha_sq: Option<String>,
    /// Comma-separated list; items may be ranges like 1..=12
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    l: Option<String>,
    /// Fock cutoff for the brute-force protocol
    #[arg(long)]
    cutoff: Option<String>,
    /// Output path, `-` for stdout
    #[arg(long)]
    out: Option<String>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
}

fn run(command: Command) -> Result<String, SweepError> {
    match command {
        Command::Sweep(f) => {
            let flags = SweepOptions {
                protocols: f.protocols,
                alpha_sq: f.alpha_sq,
                d: f.d,
                n: f.n,
                l: f.l,
                cutoff: f.cutoff,
                out: f.out,
                format: f.format,
            };
            let spec = SweepOptions::from_env()?.overridden_by(flags).into_spec()?;
            Ok(summarize(&run_sweep(&spec)?))
        }
        Command::Preset { name, out, format } => {
            let preset: Preset = name.parse()?;
            let format: OutputFormat = format.parse()?;
            Ok(summarize(&run_preset(preset, &out, format)?))
        }
        Command::Diagnostics { out } => {
            let report = run_diagnostics(&out)?;
            Ok(format!("{} points", report.summary.points))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(summary) => {
            eprintln!("qmetro: {summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qmetro: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
