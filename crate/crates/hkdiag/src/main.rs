use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hkdiag::cli::Cli;
use hkdiag::commands::{render, run};
use hkdiag::error::CliError;

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let result = run(cli)?;
    let output = render(&result, cli.format)?;
    match &cli.out {
        Some(path) => fs::write(path, output)
            .map_err(|source| CliError::Output { path: path.display().to_string(), source })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Output { path: "<stdout>".into(), source })?;
        }
    }
    Ok(result.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
