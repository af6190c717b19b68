//! minset: certify Jordan curves as minimum sets of strictly subharmonic
//! functions, and measure the constants the certification relies on.

mod cli;
mod commands;
mod formats;
mod report;
mod svg;

use clap::Parser;
use cli::{Cli, Command};
use commands::{cmd_certify, cmd_estimate, cmd_koch, cmd_ls, cmd_sweep, cmd_thresholds, Outcome};
use report::Report;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();

    // MINSET_THREADS caps the rayon workers; results are identical for any
    // worker count by construction, this only bounds resource use.
    if let Ok(threads) = std::env::var("MINSET_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }

    let command_echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let report = Report::new(command_echo, cli.seed);
    // '-' routes the JSON to stdout; keep it the only stdout output then
    let quiet = cli.json_out.as_ref().is_some_and(|p| p.as_os_str() == "-");

    let outcome = match &cli.command {
        Command::Thresholds => cmd_thresholds(report, quiet),
        Command::Certify(args) => cmd_certify(args, cli.seed, report, quiet),
        Command::Koch(args) => cmd_koch(args, report, quiet),
        Command::Estimate(args) => cmd_estimate(args, cli.seed, report, quiet),
        Command::Ls(args) => cmd_ls(args, report, quiet),
        Command::Sweep(args) => cmd_sweep(args, report, quiet),
    };

    match outcome {
        Ok(Outcome { report, certified }) => {
            if let Some(path) = &cli.json_out {
                if let Err(e) = commands::write_json(&report, path, quiet) {
                    eprintln!("{e}");
                    return ExitCode::from(e.exit_code());
                }
            }
            match certified {
                Some(false) => ExitCode::from(3),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
