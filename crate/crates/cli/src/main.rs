use std::process::ExitCode;

use clap::Parser;
use eulerlab_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("eulerlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
