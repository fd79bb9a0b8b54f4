use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anharmonic_cli::args::Cli;
use anharmonic_cli::commands::run;
use anharmonic_cli::output::write_table;
use anharmonic_cli::CliError;
use clap::Parser;

fn emit(cli: &Cli) -> Result<(), CliError> {
    let report = run(cli)?;
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_table(&report.table, cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_table(&report.table, cli.format, &mut w)?;
            w.flush()?;
        }
    }
    match report.check {
        Some(c) if cli.check && c.failed > 0 => Err(CliError::CheckFailed { failed: c.failed, total: c.total }),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match emit(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
