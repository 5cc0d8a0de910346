mod args;
mod commands;
mod input;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use pds_core::algebra::AlgebraError;
use pds_core::apcomplex::ApError;
use pds_core::balanced::BpaError;
use pds_core::overlap::OverlapError;
use pds_core::substitution::SubstitutionError;
use pds_core::verdicts::VerdictError;
use serde_json::json;
use thiserror::Error;

use args::{Cli, Command, Format};

/// Version of the structured report layout.
const SCHEMA_VERSION: u32 = 1;
const EXIT_INPUT: u8 = 2;

/// Every error maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0:?} is neither a built-in name nor an existing file")]
    UnknownInput(String),
    #[error("{name:?} is not a {expected} built-in")]
    WrongDimension { name: String, expected: &'static str },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("expected a pair U,V, got {0:?}")]
    BadPair(String),
    #[error("bad vector: {0}")]
    BadVector(String),
    #[error("invalid planar substitution: {0}")]
    InvalidPlanar(String),
    #[error("the planar input carries no periodic tiling")]
    MissingTiling,
    #[error("no shift given and the planar input has no default; pass --v X,Y")]
    MissingShift,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
    #[error(transparent)]
    Bpa(#[from] BpaError),
    #[error(transparent)]
    Verdict(#[from] VerdictError),
    #[error(transparent)]
    Ap(#[from] ApError),
    #[error(transparent)]
    Overlap(#[from] OverlapError),
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Bpa { .. } => "bpa",
        Command::TheoremUvVu { .. } => "theorem-uvvu",
        Command::Ar { .. } => "ar",
        Command::RauzyFamily { .. } => "rauzy-family",
        Command::Apcomplex { .. } => "apcomplex",
        Command::Overlap2d { .. } => "overlap2d",
    }
}

fn run(cli: &Cli) -> Result<commands::Report, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { input } => commands::analyze(input),
        Command::Bpa { input, pair } => commands::bpa(input, pair, g),
        Command::TheoremUvVu { input, u, v } => commands::theorem_uvvu(input, u, v, g),
        Command::Ar { word, d, prefix_bound } => commands::ar(word, *d, *prefix_bound, g),
        Command::RauzyFamily { c } => commands::rauzy_family(c, g),
        Command::Apcomplex { input, k, collar, depth } => commands::apcomplex(input, *k, *collar, *depth),
        Command::Overlap2d { input, v, gr_certificate, svg, svg_max_stage } => {
            commands::overlap2d(input, v.as_deref(), gr_certificate.as_deref(), svg.as_deref(), *svg_max_stage, g)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    let elapsed = start.elapsed();
    let name = command_name(&cli.command);
    let code = match result {
        Ok(report) => {
            match cli.global.format {
                Format::Text => {
                    print!("{}", report.text);
                    if cli.global.timings {
                        println!("elapsed: {:.3} s", elapsed.as_secs_f64());
                    }
                }
                Format::Structured => {
                    let mut doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": name,
                        "exit_code": report.code,
                        "result": report.data,
                    });
                    if cli.global.timings {
                        doc["timings"] = json!({"total_seconds": elapsed.as_secs_f64()});
                    }
                    println!("{}", serde_json::to_string_pretty(&doc).expect("plain data serializes"));
                }
            }
            report.code
        }
        Err(e) => {
            match cli.global.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Structured => {
                    let doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": name,
                        "exit_code": EXIT_INPUT,
                        "error": e.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("plain data serializes"));
                }
            }
            EXIT_INPUT
        }
    };
    ExitCode::from(code)
}
