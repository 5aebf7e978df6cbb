//! The `whq` command-line front end.
//!
//! Every subcommand renders a report as pretty JSON or as CSV. Reports carry
//! no timings or paths, so a fixed seed and config give byte-identical output.

pub mod args;
pub mod commands;
pub mod error;
mod io;

use std::path::Path;

use clap::Parser;

pub use args::{Cli, Command, Common, Format};
pub use error::CliError;
pub use io::write_atomic;

/// A rendered report, plus the reason for a tolerance failure when one occurred.
///
/// Failing checks still produce the report; the caller exits with code 4.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub failure: Option<String>,
}

pub(crate) fn render<T: serde::Serialize>(format: Format, report: &T, csv: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => csv(),
    }
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let c = &cli.common;
    if let Some(e) = c.epsilon {
        if !(e > 0.0 && e.is_finite()) {
            return Err(CliError::Config(format!("epsilon must be positive and finite, got {e}")));
        }
    }
    match &cli.command {
        Command::WhtAnalyze(a) => commands::wht_analyze(c, a),
        Command::QromSynth(a) => commands::qrom_synth(c, a),
        Command::Compare(a) => commands::compare(c, a),
        Command::DvrCheck(a) => commands::dvr_check(c, a),
        Command::BlockencVerify(a) => commands::blockenc_verify(c, a),
        Command::Molham(a) => commands::molham(c, a),
        Command::FitScaling(a) => commands::fit_scaling(c, a),
    }
}

/// Parses `args`, runs, writes the report and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("whq: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.common.out {
        Some(p) => write_atomic(Path::new(p), out.text.as_bytes()),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(out.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("whq: {}", CliError::Io(e));
        return 2;
    }
    match out.failure {
        Some(msg) => {
            eprintln!("whq: {}", CliError::Tolerance(msg));
            4
        }
        None => 0,
    }
}
