use clap::Parser;

use contextuality::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
