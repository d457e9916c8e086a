//! Command-line front end: scenario files and flags in, CSV out.

pub mod commands;
pub mod format;
pub mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::Command;
pub use scenario::{RawScenario, Scenario, System};

use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Parser)]
#[command(
    name = "morse-scs",
    version,
    about = "Squeezed coherent states through a beam splitter, as CSV"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Position/momentum variances of oscillator states.
    HoDispersion,
    /// Position probability density.
    Density,
    /// Linear entropy after the beam splitter, t = 0.
    Entropy,
    /// Linear entropy over time (Morse).
    EntropyTime,
    /// Exact Fourier coefficients of S(t) (Morse).
    EntropySpectrum,
    /// Linear entropy against the beam-splitter angle.
    EntropyAngle,
}

impl From<&CliCommand> for Command {
    fn from(c: &CliCommand) -> Self {
        match c {
            CliCommand::HoDispersion => Command::HoDispersion,
            CliCommand::Density => Command::Density,
            CliCommand::Entropy => Command::Entropy,
            CliCommand::EntropyTime => Command::EntropyTime,
            CliCommand::EntropySpectrum => Command::EntropySpectrum,
            CliCommand::EntropyAngle => Command::EntropyAngle,
        }
    }
}

/// Flags override the matching scenario-file keys.
#[derive(Debug, Default, Args)]
pub struct Options {
    /// Scenario file with `key = value` lines.
    #[arg(long, global = true, value_name = "FILE")]
    pub scenario: Option<PathBuf>,
    /// ho | morse
    #[arg(long, global = true)]
    pub system: Option<String>,
    /// Morse parameter.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// usual | quadratic | osc | energy, comma separated.
    #[arg(long = "type", global = true)]
    pub types: Option<String>,
    /// Grid: list `a,b,c` or `start:end:count`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "RAD")]
    pub theta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "RAD")]
    pub phi: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Run on a single thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

impl Options {
    /// Scenario file (if any) overlaid with the flags.
    pub fn scenario(&self, cmd: Command) -> Result<Scenario> {
        let mut raw = match &self.scenario {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?;
                RawScenario::parse(&text)?
            }
            None => RawScenario::default(),
        };
        raw.set("system", self.system.as_deref());
        raw.set("p", self.p.as_deref());
        raw.set("type", self.types.as_deref());
        raw.set("z", self.z.as_deref());
        raw.set("gamma", self.gamma.as_deref());
        raw.set("theta", self.theta.as_deref());
        raw.set("phi", self.phi.as_deref());
        raw.set("t", self.t.as_deref());
        raw.set("x", self.x.as_deref());
        if let Some(out) = &self.out {
            raw.set("out", out.to_str());
        }
        Scenario::resolve(&raw, cmd.default_types())
    }

    pub fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

/// Runs a parsed invocation, writing CSV to the scenario's output.
pub fn execute(cli: &Cli) -> Result<()> {
    let cmd = Command::from(&cli.command);
    let scn = cli.options.scenario(cmd)?;
    let csv = commands::run(cmd, &scn, cli.options.execution())?;
    match &scn.out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().lock().write_all(csv.as_bytes())?,
    }
    Ok(())
}

/// Process entry point; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = std::io::stdout().lock().write_all(e.to_string().as_bytes());
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return 2;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            e.exit_code()
        }
    }
}
