mod args;
mod commands;
mod io;
mod render;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    // usage errors exit 1; 2 is kept for inputs outside the supported class
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => commands::classify(a).map(|_| false),
        Command::NormalForm(a) => commands::normal_form(a).map(|_| false),
        Command::Worst(a) => commands::worst(a).map(|_| false),
        Command::Simulate(a) => commands::simulate(a).map(|_| false),
        Command::Batch(a) => commands::batch(a),
    };
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
