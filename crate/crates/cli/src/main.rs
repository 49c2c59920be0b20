use std::ffi::OsString;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod commands;
mod manifest;

use commands::{Cli, Command};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os().collect()))
}

fn run(argv: Vec<OsString>) -> u8 {
    let argv: Vec<String> = match argv.into_iter().map(|a| a.into_string()).collect() {
        Ok(v) => v,
        Err(_) => {
            eprintln!("error: arguments must be valid UTF-8");
            return EXIT_ERROR;
        }
    };
    let argv = match manifest::merge_config(argv) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_ERROR;
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
        }
    };
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    }
    let (cli, recorded) = match cli.command {
        Command::Replay { ref path } => match manifest::load_replay(path, &cli.global) {
            Ok(pair) => pair,
            Err(e) => {
                eprintln!("error: {e:#}");
                return EXIT_ERROR;
            }
        },
        _ => {
            let recorded = manifest::recorded_args(&argv[1..]);
            (cli, recorded)
        }
    };
    let started = manifest::start();
    match commands::execute(&cli.command, cli.global.format) {
        Ok(out) => {
            if let Err(e) = manifest::emit(&cli, &recorded, &out, started) {
                eprintln!("error: {e:#}");
                return EXIT_ERROR;
            }
            eprintln!("{}", out.summary);
            if out.unknown {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}
