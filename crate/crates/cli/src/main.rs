use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use seqctl_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let _ = std::io::stdout().write_all(outcome.output.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("seqctl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
