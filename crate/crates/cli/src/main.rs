mod args;
mod commands;
mod error;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{Context, Outcome};
use error::CliError;

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let cx = Context::new(cli.config)?;
    match &cli.command {
        Command::Voltages { graph, a, b } => commands::voltages(&cx, graph, *a, *b),
        Command::Orbits { graph, verify } => commands::orbits(&cx, graph, *verify),
        Command::Iso { first, second } => commands::iso(&cx, first, second),
        Command::Fingerprint { graph } => commands::fingerprint(&cx, graph),
        Command::Canon { graph } => commands::canon(&cx, graph),
        Command::Oracle { query } => commands::oracle(&cx, query),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let kind = match e.kind() {
                ErrorKind::ValueValidation | ErrorKind::InvalidValue => "InvalidArgument",
                _ => "Usage",
            };
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("{}", CliError::input(kind, first).to_json());
            return ExitCode::from(error::EXIT_INPUT as u8);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth reporting
            let _ = stdout.write_all(out.stdout.as_bytes());
            if !out.stdout.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code as u8)
        }
    }
}
