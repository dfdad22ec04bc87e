use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use labs_cli::cli::{run, Cli, UsageError, EXIT_FAILURE, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_FAILURE
            }
        }
    };
    ExitCode::from(code as u8)
}
