use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use bernlike_cli::{run, Cli, CliError, Command};
use clap::Parser;

fn out_path(command: &Command) -> Option<&std::path::Path> {
    match command {
        Command::Basis(a) => a.output.out.as_deref(),
        Command::Operator(a) => a.output.out.as_deref(),
        Command::Moments(a) => a.output.out.as_deref(),
        Command::Converge(a) => a.output.out.as_deref(),
        Command::Voronovskaja(a) => a.output.out.as_deref(),
        Command::Shape(a) => a.out.as_deref(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|outcome| {
        match out_path(&cli.command) {
            Some(path) => fs::write(path, &outcome.text)?,
            None => io::stdout().lock().write_all(outcome.text.as_bytes())?,
        }
        Ok::<_, CliError>(outcome.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("bernlike: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
