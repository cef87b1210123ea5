//! Command-line front end for `firstsplit`.
//!
//! Every command produces one document, rendered as `dotted.key: value`
//! lines or as JSON. Exit codes: 0 ok, 1 property failure, 2 invalid input,
//! 3 limits, 4 genome mismatch, 5 I/O, 6 usage.

pub mod args;
pub mod check;
pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use firstsplit::solver::SolverConfig;
use serde_json::{json, Value};

use args::{Cli, Command};
use output::{exit, CliError, Outcome};

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Approx { .. } => "approx",
        Command::Exact { .. } => "exact",
        Command::Mdpp { .. } => "mdpp",
        Command::Partition { .. } => "partition",
        Command::Decide(_) => "decide",
        Command::Dupcost { .. } => "dupcost",
        Command::Greedy { .. } => "greedy",
        Command::Graph { .. } => "graph",
        Command::Gen(_) => "gen",
        Command::Check(_) => "check",
        Command::Bench(_) => "bench",
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = SolverConfig {
        threads: cli.threads as usize,
        ..SolverConfig::default()
    };
    match &cli.command {
        Command::Approx { input, certify } => commands::approx(input, *certify, &cfg),
        Command::Exact { input, all } => commands::exact(input, *all, &cfg),
        Command::Mdpp { input } => commands::mdpp(input, &cfg),
        Command::Partition { input } => commands::partition(input, &cfg),
        Command::Decide(a) => commands::decide(a, &cfg),
        Command::Dupcost { forest, species } => commands::dupcost(forest, species),
        Command::Greedy { input, method } => commands::greedy(input, *method, &cfg),
        Command::Graph { input, which, dot } => commands::graph(input, *which, dot.as_deref()),
        Command::Gen(g) => commands::gen(g),
        Command::Check(a) => check::check(a, &cfg),
        Command::Bench(a) => check::bench(a, &cfg, cli.timing),
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{shown}");
                    exit::OK
                }
                _ => {
                    let _ = write!(stderr, "{shown}");
                    exit::USAGE
                }
            };
        }
    };
    let echo: Value = json!({
        "name": command_name(&cli.command),
        "argv": argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>(),
    });
    let started = Instant::now();
    match dispatch(&cli) {
        Ok(outcome) => {
            let ms = cli.timing.then(|| started.elapsed().as_secs_f64() * 1e3);
            let doc = output::document(echo, &outcome, ms);
            let _ = write!(stdout, "{}", output::render(&doc, cli.format));
            match outcome.failure {
                Some(m) => {
                    let _ = writeln!(stderr, "property failure: {m}");
                    exit::PROPERTY
                }
                None => exit::OK,
            }
        }
        Err(err) => {
            if cli.format == args::Format::Json {
                let _ = write!(
                    stdout,
                    "{}",
                    output::render(&output::error_document(echo, &err), cli.format)
                );
            }
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    }
}
