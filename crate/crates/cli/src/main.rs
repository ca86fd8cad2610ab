use std::process::ExitCode;

use clap::Parser;
use cocycle_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            let text = outcome.doc.to_json();
            match &cli.command.common().out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error [E_IO]: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
