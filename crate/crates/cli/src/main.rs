use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use critical_match_cli::{init_logging, run, Cli, LOG_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(bad) = init_logging() {
        eprintln!("warning: ignoring {LOG_ENV}={bad:?}; expected off, info or trace");
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let exit = match run(&cli, &mut out) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit()
        }
    };
    let _ = out.flush();
    ExitCode::from(exit.code() as u8)
}
