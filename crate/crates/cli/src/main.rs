mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;
use multicirc::oracle::Limits;

use args::{Cli, Format};
use error::CliError;

fn render(cli: &Cli) -> Result<(String, Option<CliError>), CliError> {
    let limits = cli.cap.map(Limits::uniform).unwrap_or_default();
    let out = commands::run(&cli.command, &limits)?;
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("values serialize"),
        Format::Text => out.text,
        Format::Dot => match out.dot {
            Some(dot) => dot.trim_end().to_string(),
            None => return Err(CliError::usage("--format", "dot output needs a graph-producing command")),
        },
    };
    Ok((body, out.failed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match render(&cli) {
        Ok((body, failed)) => {
            println!("{body}");
            match failed {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("error[{}]: {e}", e.kind());
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
