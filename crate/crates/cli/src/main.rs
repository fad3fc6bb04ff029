mod args;
mod commands;
mod output;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, UsageError};

/// A computed result contradicted an independent check; exit code 2.
#[derive(Debug)]
pub struct VerificationFailed(pub String);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global()?;
    }
    let (format, out) = (cli.format, cli.out.as_deref());
    match &cli.command {
        Command::Count(a) => commands::count(a, format, out),
        Command::Components(a) => commands::components(a, format, out),
        Command::ComponentsTable(a) => commands::components_table(a, format, out),
        Command::Lambda2(a) => commands::lambda2_sweep(a, format, out),
        Command::Spectrum(a) => commands::spectrum(a, format, out),
        Command::Cayley(a) => commands::cayley(a, format, out),
        Command::FrickeSelftest(a) => commands::fricke_selftest(a, format, out),
        Command::Selftest => commands::selftest(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
