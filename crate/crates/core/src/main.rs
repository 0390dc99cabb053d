use std::process::ExitCode;

use clap::Parser;
use ramsey_patterns::cli::{run, Cli};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(&cli, &argv) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
