use std::process::ExitCode;

use clap::Parser;
use sierpinski_metric::cli::{run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let stdout = std::io::stdout();
    match run(&cfg, &mut stdout.lock()) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
