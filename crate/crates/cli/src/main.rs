mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use antisym_core::Error as CoreError;
use clap::Parser;
use thiserror::Error;

use args::{Cli, Command, Format, LpCommand, VerifyCommand};
use report::{Outcome, Report};

const THREADS_VAR: &str = "ANTISYM_THREADS";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::Verification(_)) => 1,
            CliError::Core(CoreError::Solver(_)) => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Csv(_) => 2,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let threads = match std::env::var(THREADS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be an integer >= 1, got {v:?}")))?,
        Err(_) => 1,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let report = match &cli.command {
        Command::Squashed(a) => commands::squashed(a)?,
        Command::Lp(LpCommand::Zeta(a)) => commands::zeta(a)?,
        Command::Lp(LpCommand::Dual(a)) => commands::dual(a)?,
        Command::Verify(VerifyCommand::Rep(a)) => commands::verify(a)?,
        Command::Bounds(a) => commands::bounds(a)?,
        Command::Purity(a) => commands::purity(a)?,
    };
    Ok(report)
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let body = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    let report = dispatch(cli)?;
    emit(cli, &report)?;
    Ok(report.outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed(msg)) => {
            eprintln!("antisym: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("antisym: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let code = |e: CoreError| CliError::Core(e).exit_code();
        assert_eq!(code(CoreError::Verification(String::new())), 1);
        assert_eq!(code(CoreError::Domain(String::new())), 2);
        assert_eq!(code(CoreError::Resource(String::new())), 2);
        assert_eq!(code(CoreError::Solver(String::new())), 3);
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
    }
}
