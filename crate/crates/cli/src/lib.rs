//! Command-line front end: parses a [`config::RunConfig`], runs one of the
//! verification commands, and writes a [`report::Report`].
//!
//! Exit codes are 0 when every check passes, 1 when any check fails and 2
//! for usage or configuration errors.

pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

use std::io::Write;
use std::time::Instant;

use clap::Parser;

use config::{Cli, Command, CommandKind, Format, RunConfig};
use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Io(e) => write!(f, "cannot write output: {e}"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(cli) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("pdmcs: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli) -> Result<bool, Failure> {
    let (kind, args) = match cli.command {
        Command::Spectrum(a) => (CommandKind::Spectrum, a),
        Command::Coherent(a) => (CommandKind::Coherent, a),
        Command::VerifyAll(a) => (CommandKind::VerifyAll, a),
    };
    let config = RunConfig::from_args(kind, args).map_err(Failure::Usage)?;
    let start = Instant::now();
    let mut density = None;
    let checks = match kind {
        CommandKind::Spectrum => commands::cmd_spectrum(&config)?,
        CommandKind::Coherent => {
            let run = commands::cmd_coherent(&config)?;
            if config.dump_density {
                density = Some(commands::density_csv(&run));
            }
            run.checks
        }
        CommandKind::VerifyAll => verify::cmd_verify_all(&config)?,
    };
    let elapsed = (!config.omit_timing).then(|| start.elapsed().as_secs_f64());
    let report = Report::new(kind.name(), config.clone(), checks, elapsed);

    let body = match (density, config.format) {
        (Some(d), _) => {
            eprintln!(
                "pdmcs: {} passed, {} failed",
                report.summary.passed, report.summary.failed
            );
            d
        }
        (None, Format::Json) => report.to_json(),
        (None, Format::Csv) => report.to_csv(),
    };
    match &config.out {
        Some(path) => std::fs::write(path, body).map_err(Failure::Io)?,
        None => std::io::stdout().write_all(body.as_bytes()).map_err(Failure::Io)?,
    }
    Ok(report.ok())
}
