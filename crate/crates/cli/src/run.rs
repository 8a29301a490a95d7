//! Shared plumbing: input tracking, number formatting, run manifests and
//! exit codes.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use hypercone::rational::{format_rational, to_f64};
use hypercone::Rational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::{commands, Command, Global};

pub const SCHEMA: &str = "hypercone/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hypercone::Error),
    #[error("cannot read `{path}`: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write `{path}`: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Budget,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Budget => "budget-exceeded",
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Budget => 3,
        }
    }

    /// Failure dominates an exhausted budget.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Budget, _) | (_, Status::Budget) => Status::Budget,
            _ => Status::Pass,
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub text: Vec<String>,
    pub result: Value,
    pub parameters: Value,
}

pub struct Context {
    pub global: Global,
    inputs: Vec<(String, String)>,
}

impl Context {
    /// Reads an input file, recording its digest for the manifest.
    pub fn read(&mut self, path: &Path) -> CliResult<String> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
        let digest = Sha256::digest(text.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push((path.display().to_string(), hex));
        Ok(text)
    }

    pub fn num(&self, r: &Rational) -> String {
        if self.global.float {
            format!("{}", to_f64(r))
        } else {
            format_rational(r)
        }
    }
}

pub fn execute(global: &Global, command: &Command) -> ExitCode {
    let start = Instant::now();
    let mut ctx = Context { global: global.clone(), inputs: Vec::new() };
    let outcome = commands::dispatch(&mut ctx, command);
    let wall_ms = start.elapsed().as_millis() as u64;
    let name = command_name(command);
    match outcome {
        Ok(out) => {
            let manifest = json!({
                "schema": SCHEMA,
                "command": name,
                "inputs": ctx.inputs.iter().map(|(p, d)| json!({"path": p, "sha256": d})).collect::<Vec<_>>(),
                "parameters": merge_parameters(&ctx, out.parameters.clone()),
                "outcome": out.status.as_str(),
            });
            let timing = json!({"wall_ms": wall_ms});
            if ctx.global.json {
                let mut doc = json!({"schema": SCHEMA, "result": out.result, "manifest": manifest.clone()});
                if !ctx.global.no_timing {
                    doc["timing"] = timing.clone();
                }
                emit(&[serde_json::to_string_pretty(&doc).expect("serializable")]);
            } else {
                emit(&out.text);
            }
            if let Some(path) = &ctx.global.manifest {
                let doc = json!({"manifest": manifest, "timing": timing});
                let text = serde_json::to_string_pretty(&doc).expect("serializable");
                if let Err(source) = std::fs::write(path, text + "\n") {
                    eprintln!("error: {}", CliError::Write { path: path.clone(), source });
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(out.status.code())
        }
        Err(e) => {
            if ctx.global.json {
                let doc = json!({"schema": SCHEMA, "error": e.to_string(), "manifest": {"command": name, "outcome": "error"}});
                emit(&[serde_json::to_string_pretty(&doc).expect("serializable")]);
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes lines to stdout, stopping quietly if the reader went away.
fn emit(lines: &[String]) {
    let mut out = std::io::stdout().lock();
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

fn merge_parameters(ctx: &Context, mut params: Value) -> Value {
    if !params.is_object() {
        params = json!({});
    }
    params["seed"] = json!(ctx.global.seed);
    params["threads"] = json!(rayon::current_num_threads());
    if let Some(b) = ctx.global.budget {
        params["budget"] = json!(b);
    }
    params
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Entropy { .. } => "entropy",
        Command::CheckIneq { .. } => "check-ineq",
        Command::VerifyMap { .. } => "verify-map",
        Command::SearchMap { .. } => "search-map",
        Command::BatchAppendix { .. } => "batch-appendix",
        Command::BuildState { .. } => "build-state",
        Command::Reduce { .. } => "reduce",
        Command::Rays { .. } => "rays",
        Command::Parse { .. } => "parse",
    }
}
