//! Command-line front end for `cyclodyn-core`: subcommands, run directories
//! with hashed reports, certificate re-verification and seeded suites.

pub mod args;
pub mod commands;
pub mod dto;
pub mod env;
pub mod error;
pub mod report;
pub mod suites;
pub mod verify;

use std::path::Path;

use serde_json::json;

use args::{Cli, Command, SuiteArgs, SuiteName};
use env::EnvConfig;
use error::CliError;
use report::{Outcome, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

fn suite(a: &SuiteArgs, env: &EnvConfig) -> Report {
    let r = match a.name {
        SuiteName::Growth => suites::growth_suite(
            a.seed,
            a.count.unwrap_or(suites::GROWTH_COUNT),
            env.precision_bits,
        ),
        SuiteName::Sigma => suites::sigma_suite(a.seed, env.precision_bits),
        SuiteName::Fz => suites::fz_suite(a.seed, a.count.unwrap_or(suites::FZ_COUNT)),
    };
    let mut config = serde_json::to_value(a).expect("args");
    config["precision_bits"] = json!(env.precision_bits);
    Report {
        command: "suite".into(),
        config,
        outcome: Outcome::Completed,
        result: suites::suite_value(&r),
        certificates: Vec::new(),
    }
}

/// Builds the report for a run command; `None` for `verify`.
pub fn build_report(cmd: &Command, env: &EnvConfig) -> Result<Option<Report>, CliError> {
    Ok(Some(match cmd {
        Command::Orbit(a) => commands::orbit(a, env)?,
        Command::Preperiodic(a) => commands::preperiodic(a, env)?,
        Command::ScanSa(a) => commands::scan(a, env)?,
        Command::Sigma(a) => commands::sigma(a, env)?,
        Command::Special(a) => commands::special(a, env)?,
        Command::Bounds(a) => commands::bounds(a, env)?,
        Command::Loxton(a) => commands::loxton(a, env)?,
        Command::FzCheck(a) => commands::fz(a, env)?,
        Command::Growth(a) => commands::growth(a, env)?,
        Command::Suite(a) => suite(a, env),
        Command::Verify(_) => return Ok(None),
    }))
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, env: &EnvConfig) -> i32 {
    let started = report::now();
    if let Command::Verify(v) = &cli.command {
        return match report::verify_report(&v.dir) {
            Ok(o) => {
                let failed: Vec<usize> = o
                    .certificates
                    .iter()
                    .enumerate()
                    .filter(|(_, ok)| !**ok)
                    .map(|(i, _)| i)
                    .collect();
                let summary = json!({
                    "ok": o.ok(),
                    "hash_ok": o.hash_ok,
                    "certificates_checked": o.certificates.len(),
                    "certificates_failed": failed,
                    "errors": o.errors,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("summary")
                );
                if o.ok() {
                    EXIT_OK
                } else {
                    EXIT_FALSE
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_CONFIG
            }
        };
    }
    let report = match build_report(&cli.command, env) {
        Ok(r) => r.expect("run command"),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    match report::write_run(&cli.out, &report, started) {
        Ok(entry) => {
            println!(
                "{}: {:?}, report sha256 {}",
                report.command, report.outcome, entry.report_sha256
            );
            report.outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

/// Reads `report.json` from a run directory.
pub fn read_report(dir: &Path) -> Result<Report, CliError> {
    let path = dir.join(report::REPORT_FILE);
    let raw = std::fs::read(&path).map_err(|e| CliError::io(&path, e))?;
    serde_json::from_slice(&raw)
        .map_err(|e| error::ConfigError::new(report::REPORT_FILE, e.to_string()).into())
}
