mod args;
mod commands;
mod outcome;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use outcome::{generic_table, Outcome};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let _ = e.print();
            let out = Outcome::input_error(e.kind().to_string());
            println!("{}", out.payload);
            return ExitCode::from(out.exit_code() as u8);
        }
    };
    let start = Instant::now();
    let out = commands::run(&cli);
    let elapsed = start.elapsed();

    let text = out.payload.to_string();
    println!("{text}");
    if let Some(path) = &cli.common.json_out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.common.table {
        let body = out
            .table
            .clone()
            .unwrap_or_else(|| generic_table(&out.payload));
        eprint!("{body}");
        eprintln!(
            "status {}  elapsed {} ms",
            out.status.name(),
            elapsed.as_millis()
        );
    }
    ExitCode::from(out.exit_code() as u8)
}
