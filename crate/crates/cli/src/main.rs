use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use qsl_cli::args::{execute, Cli};
use qsl_cli::CliError;

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("QSL_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("QSL_THREADS = {raw:?} is not a non-negative integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    let rendered = execute(&cli.command)?;
    if let Some(text) = rendered.emit()? {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(text.as_bytes());
    }
    if rendered.failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{}", rendered.failure_json());
        Ok(ExitCode::from(1))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}
