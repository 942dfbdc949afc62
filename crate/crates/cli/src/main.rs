mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = serde_json::json!({ "kind": e.kind(), "message": e.to_string() });
            eprintln!("{line}");
            // 1: the numerics failed; 2: the request itself was bad.
            ExitCode::from(if e.is_numeric() { 1 } else { 2 })
        }
    }
}
