use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

mod commands;
mod report;

use commands::{Cli, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    match commands::run(cli) {
        Ok(Outcome { report, failures }) => {
            let mut out = io::stdout().lock();
            if let Err(e) = writeln!(out, "{}", report.render(pretty)) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("cubal: {e}");
                    return ExitCode::from(2);
                }
            }
            for failure in &failures {
                eprintln!("verification failed: {failure}");
            }
            if failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("cubal: {err}");
            ExitCode::from(2)
        }
    }
}
