use std::process::ExitCode;

use clap::Parser;
use monotone_lab::{Cli, LabError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match monotone_lab::run(&cli, &mut std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let LabError::Failure { case, .. } = &e {
                eprint!("{case}");
            }
            e.into()
        }
    }
}
