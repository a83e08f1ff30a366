use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod model;
mod output;

use args::{Cli, Command};
use model::Usage;

/// 2 for bad input of any kind, 3 for anything else.
fn failure_code(e: &anyhow::Error) -> u8 {
    let input = e.chain().any(|c| {
        c.downcast_ref::<Usage>().is_some()
            || c.downcast_ref::<obsinfer_core::Error>()
                .is_some_and(|e| !matches!(e, obsinfer_core::Error::SpaceMismatch))
    });
    if input {
        2
    } else {
        3
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    let format = cli.format;
    match cli.command {
        Command::Scenarios => commands::scenarios(format),
        Command::Dump { model, output } => commands::dump(&model, output.as_deref()),
        Command::Query {
            model,
            measure,
            event,
            given,
            cells,
        } => commands::query(
            format,
            &model,
            measure,
            &event,
            given.as_deref(),
            cells.as_deref(),
        ),
        Command::Check {
            model,
            measure,
            weights,
            cap,
            principles,
        } => commands::check_cmd(
            format,
            &model,
            measure,
            weights.as_deref(),
            cap,
            &principles,
        ),
        Command::Solve { model, principles } => commands::solve_cmd(format, &model, &principles),
        Command::Estimate {
            model,
            target,
            samples,
            seed,
            streams,
            which,
            theta,
        } => commands::estimate(
            format,
            &model,
            &commands::EstimateArgs {
                target: target.as_deref(),
                samples: &samples,
                seed,
                streams,
                which,
                theta,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(failure_code(&e))
        }
    }
}
