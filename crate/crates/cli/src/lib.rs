//! Command-line front end for weylworks.
//!
//! Results go to stdout, diagnostics to stderr. JSON output carries
//! `"schema_version": 1`; counts that may exceed 2^53 are written as
//! decimal strings.

pub mod commands;
pub mod config;

use std::ffi::OsString;

use clap::Parser;

pub use config::{Cli, Command, Format, RunConfig};

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code when a computation fails or two routes disagree.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for malformed invocations.
pub const EXIT_USAGE: i32 = 2;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let print_config = cli.global.print_config;
    let config = RunConfig::from(cli);
    if print_config {
        println!("{}", serde_json::to_string_pretty(&config).expect("config serializes"));
        return EXIT_OK;
    }
    match commands::execute(&config) {
        Ok(outcome) => {
            print!("{}", outcome.render(config.global.format));
            if outcome.ok {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> i32 {
    if let Some(err) = e.downcast_ref::<weylworks::Error>() {
        return match err {
            weylworks::Error::Argument(_) | weylworks::Error::Parse(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
    }
    if e.downcast_ref::<std::io::Error>().is_some() || e.downcast_ref::<serde_json::Error>().is_some() {
        return EXIT_USAGE;
    }
    EXIT_FAILURE
}
