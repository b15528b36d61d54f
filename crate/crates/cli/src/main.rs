mod cli;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use tailqaoa_core::Error as CoreError;

use crate::commands::UsageError;

fn exit_status(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<CoreError>() {
        Some(
            CoreError::UniquenessUnachievable { .. }
            | CoreError::NoSolutions
            | CoreError::NoFiniteTts,
        )
        | None => 1,
        Some(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = cli::Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_status(&err))
        }
    }
}
