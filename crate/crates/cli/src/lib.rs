//! Command-line front end for `dessin-core`: argument parsing, the knot
//! table, JSON and plain-text reports, a results cache, a threaded scan
//! executor and the `verify` invariant suite.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde_json::Value;

pub mod cache;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod input;
pub mod json;
pub mod verify;

use commands::{Cli, Env};
use dessin_core::invariants::Context;
use error::{CliError, CliResult, ExitCode};
use exec::Threaded;

/// Version tag of every JSON document this crate emits.
pub const SCHEMA: &str = "dessin-cli/1";

/// A command's output in both renderings.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub plain: String,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status. Reports go to `stdout` or `--out`; errors go to
/// `stderr` as JSON.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let err = CliError::usage(e.render().to_string().trim_end());
            let _ = writeln!(stderr, "{}", err.to_json());
            return err.code as i32;
        }
    };
    match run_cli(&cli, stdout) {
        Ok(code) => code as i32,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            e.code as i32
        }
    }
}

fn run_cli(cli: &Cli, stdout: &mut dyn Write) -> CliResult<ExitCode> {
    let (scan_cap, state_cap) = cli.global.caps()?;
    let exec = match cli.global.workers {
        Some(0) => return Err(CliError::usage("--workers must be at least 1")),
        Some(n) => Threaded::new(n),
        None => Threaded::available(),
    };
    let env = Env {
        ctx: Context {
            exec: &exec,
            scan_cap,
            state_cap,
        },
    };
    let prepared = cli.command.prepare()?;
    let cache = cli
        .global
        .cache
        .as_deref()
        .filter(|_| cli.command.cacheable())
        .map(cache::Cache::new);
    let key = cache::key(
        cli.command.name(),
        &prepared.canonical_input(),
        &prepared.flags,
    );

    let cached = match &cache {
        Some(c) => c.get(&key)?,
        None => None,
    };
    let (report, code) = match cached {
        Some(r) => (r, ExitCode::Ok),
        None => {
            let (r, code) = commands::execute(&cli.command, &prepared, &env)?;
            if let (Some(c), ExitCode::Ok) = (&cache, code) {
                c.put(&key, &r)?;
            }
            (r, code)
        }
    };

    let text = if cli.global.plain {
        report.plain
    } else {
        let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
        s.push('\n');
        s
    };
    match &cli.global.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::io(&format!("writing {}", path.display()), e))?,
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("writing output", e))?,
    }
    Ok(code)
}
