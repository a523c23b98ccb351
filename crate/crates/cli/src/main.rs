use std::process::ExitCode;

use clap::Parser;
use zddmap_cli::{run, Args, RunConfig};

fn main() -> ExitCode {
    let args = Args::parse();
    match RunConfig::new(args).and_then(|cfg| run(&cfg)) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zddmap: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
