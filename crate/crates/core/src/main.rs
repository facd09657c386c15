use std::process::ExitCode;

use clap::Parser;
use ising_fss::cli::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}
