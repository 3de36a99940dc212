use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stellar_cli::app::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = stellar_cli::CliError::Parse(e.to_string());
            let doc = stellar_cli::document::ErrorDocument::from_error(&err);
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("errors serialise")
            );
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let out = run(&cli);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
