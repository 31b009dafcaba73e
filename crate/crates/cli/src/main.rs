use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fwdiff_cli::commands::EXIT_INPUT;
use fwdiff_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome = run(&cli);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(outcome.stdout().as_bytes());
    let _ = out.flush();
    if let Some(msg) = &outcome.message {
        eprintln!("error: {msg}");
    }
    ExitCode::from(outcome.code as u8)
}
