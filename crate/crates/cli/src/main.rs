use std::process::ExitCode;

use clap::Parser;
use tunneling_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    ExitCode::from(execute(&cli) as u8)
}
