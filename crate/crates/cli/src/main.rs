mod args;
mod commands;
mod output;
mod resume;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::{CliError, Ctx};
use output::Expected;

const EXIT_USAGE: u8 = 64;
const EXIT_SOFTWARE: u8 = 70;
const EXIT_IO: u8 = 74;
const EXIT_HALTED: u8 = 75;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = match &e {
                CliError::Usage(m) => {
                    eprintln!("robinv: usage: {m}");
                    EXIT_USAGE
                }
                CliError::Core(err) => {
                    eprintln!("robinv: {err}");
                    EXIT_SOFTWARE
                }
                CliError::Io(m) => {
                    eprintln!("robinv: {m}");
                    EXIT_IO
                }
                CliError::Halted { next_segment, total } => {
                    eprintln!("robinv: halted at segment {next_segment} of {total}; rerun with the same --resume to continue");
                    EXIT_HALTED
                }
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let expected = Expected::parse(&cli.global.expect_fail).map_err(CliError::Usage)?;
    let ctx = Ctx::new(cli.global.clone())?;
    let records = commands::run(&cli.command, &ctx)?;
    let color = ctx.global.output.is_none() && output::stdout_is_terminal();
    commands::write_output(ctx.global.output.as_deref(), &records, &ctx, color)?;
    Ok(output::exit_status(&records, &expected) as u8)
}
