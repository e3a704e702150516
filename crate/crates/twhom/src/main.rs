use std::process::ExitCode;

use clap::Parser;
use twhom::cli::Cli;
use twhom::commands::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli, &echo) {
        Ok(report) => {
            let text = if cli.global.json { report.to_json() } else { report.to_text() };
            print!("{text}");
            if report.all_definite() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
