//! Command implementations behind the `tribranch` binary. Every command
//! returns a JSON report; the exit code is 0 on success, 1 on malformed
//! input and 2 when a mathematical check fails.

mod analyze;
mod args;
pub mod config;
mod geometry;
mod scwol_cmd;

use std::fmt::Display;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;

use serde_json::Value;

pub use analyze::cmd_analyze;
pub use args::{Cli, Command, ScwolCommand};
pub use geometry::{cmd_link, cmd_orbit, cmd_triangle, OrbitSource};
pub use scwol_cmd::cmd_scwol;

/// Version of the report layout, written as `"schema"` in every report.
pub const REPORT_SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

pub(crate) fn input_err<E: Display>(e: E) -> InputError {
    InputError(e.to_string())
}

/// A finished command: its report and whether every check passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn new(command: &str, mut body: serde_json::Map<String, Value>, passed: bool) -> Self {
        body.insert("schema".into(), REPORT_SCHEMA.into());
        body.insert("command".into(), command.into());
        body.insert("passed".into(), passed.into());
        Outcome { report: Value::Object(body), passed }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_CHECK
        }
    }
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn execute(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Analyze { config } => cmd_analyze(&config::JobConfig::load(config)?),
        Command::Triangle { p, q, r, a, b, c } => {
            let invariants = match (a, b, c) {
                (Some(a), Some(b), Some(c)) => Some([*a, *b, *c]),
                (None, None, None) => None,
                _ => return Err(InputError("--a, --b and --c must be given together".into())),
            };
            cmd_triangle(*p, *q, *r, invariants)
        }
        Command::Orbit { config, p, q, r, place, depth, dot } => {
            let source = match (config, p, q, r) {
                (Some(path), None, None, None) => OrbitSource::Config(config::JobConfig::load(path)?),
                (None, Some(p), Some(q), Some(r)) => OrbitSource::Triangle(*p, *q, *r),
                _ => return Err(InputError("give either --config or all of --p, --q, --r".into())),
            };
            let out = cmd_orbit(&source, place, *depth)?;
            if let Some(path) = dot {
                let text = out.report["dot"].as_str().unwrap_or_default();
                std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            }
            Ok(out)
        }
        Command::Link { prime, dim } => cmd_link(*prime, *dim),
        Command::Scwol(sub) => cmd_scwol(sub),
    }
}

/// Parses arguments, runs the command, writes the report and returns the
/// exit code. Panics are caught and reported as input errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    panic::set_hook(Box::new(|_| {}));
    let result = panic::catch_unwind(AssertUnwindSafe(|| execute(&cli)));
    let _ = panic::take_hook();
    let outcome = match result {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("unknown cause");
            eprintln!("error: internal failure: {msg}");
            return EXIT_INPUT;
        }
    };
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports are plain JSON") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{text}"),
    }
    outcome.exit_code()
}
