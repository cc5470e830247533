use std::io::Write;

use clap::Parser;
use facerel::cli::{run, RunConfig};

fn main() {
    let config = RunConfig::parse();
    let outcome = run(&config);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
