use clap::Parser;
use lup::cli::{execute, Cli, RunConfig};

fn main() {
    let cfg: RunConfig = Cli::parse().into();
    match execute(&cfg) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("lup: {e}");
            std::process::exit(2);
        }
    }
}
