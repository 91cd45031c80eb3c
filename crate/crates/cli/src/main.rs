//! `fpp`: batch front end for the pressure, certificate, coherence, dynamics
//! and replication computations.
//!
//! Exit status: 0 success, 2 invalid arguments or input, 3 a computational
//! precondition failed, 4 a replication case failed.

mod args;
mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use commands::Context;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] fpp_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}

fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var("FPP_THREADS") {
        Err(_) => Ok(1),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Usage(format!(
                "FPP_THREADS must be a positive integer, got {s:?}"
            ))),
        },
    }
}

fn run(cli: &Cli) -> Result<report::Outcome, CliError> {
    let ctx = Context {
        argv: std::env::args().skip(1).collect(),
        threads: threads_from_env()?,
    };
    let start = Instant::now();
    let mut outcome = match &cli.command {
        Command::Pressure(a) => commands::pressure(&ctx, a),
        Command::Certificate(a) => commands::certificate(&ctx, a),
        Command::Coherence(a) => commands::coherence(&ctx, a),
        Command::Dynamics(a) => commands::dynamics(&ctx, a),
        Command::Replicate(a) => commands::replicate(&ctx, a),
    }?;
    if cli.timing {
        outcome.report.wall_time_seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(outcome.render(cli.format).as_bytes());
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
