//! `shtuka`: build contexts, compute artifacts and verify identity suites.
//!
//! Exit codes: 0 success, 1 identity violation or runtime failure, 2 usage or
//! configuration error, 3 insufficient precision.

mod config;
mod objects;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use config::{Format, Overrides};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precision(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Precision(_) => 3,
        }
    }
}

impl From<shtuka::Error> for CliError {
    fn from(e: shtuka::Error) -> CliError {
        use shtuka::Error as E;
        match e {
            E::InsufficientPrecision(_) | E::ZeroAtPrecision(_) | E::ProductStalled(_) => CliError::Precision(e.to_string()),
            E::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "shtuka", version, about = "Drinfeld modules, shtuka functions and twisted L-series, computed exactly")]
struct Cli {
    /// Line-oriented `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Size of the constant field.
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Coefficients of P_∞, constant term first, e.g. "1,1,1".
    #[arg(long, global = true)]
    pinf: Option<String>,
    /// Working u-precision N.
    #[arg(long, global = true, allow_negative_numbers = true)]
    precision: Option<i64>,
    /// Degree cutoff D.
    #[arg(long, global = true)]
    degree: Option<u32>,
    /// Number of variables s.
    #[arg(long, global = true)]
    vars: Option<usize>,
    /// Exponent n for special values.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Output path; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an identity suite.
    Verify {
        #[arg(value_enum)]
        suite: suites::Suite,
    },
    /// Compute and write an artifact.
    Compute {
        #[arg(value_enum)]
        object: objects::Object,
    },
}

fn load(cli: &Cli) -> Result<config::RunConfig, CliError> {
    let base = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("config: cannot read {}: {e}", path.display())))?;
            config::parse_config_text(&text).map_err(|e| CliError::Usage(format!("config: {e}")))?
        }
        None => Overrides::default(),
    };
    let flags = Overrides {
        q: cli.q,
        pinf: cli.pinf.clone(),
        precision: cli.precision,
        degree: cli.degree,
        vars: cli.vars,
        n: cli.n,
        format: cli.format,
        out: cli.out.clone(),
    };
    config::validate(config::merge(base, flags)).map_err(|e| CliError::Usage(format!("invalid configuration: {e}")))
}

fn emit(body: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cfg = load(&cli)?;
    let start = Instant::now();
    match cli.command {
        Command::Verify { suite } => {
            let checks = suites::run(suite, &cfg)?;
            let ok = checks.iter().all(|c| c.ok);
            let body = match cfg.format {
                Format::Json => {
                    let v = json!({
                        "suite": suite.name(),
                        "passed": ok,
                        "checks": checks.iter().map(suites::Check::to_json).collect::<Vec<_>>(),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Format::Csv => {
                    let mut s = String::from("suite,identity,residual_valuation,required,ok,note\n");
                    for c in &checks {
                        let opt = |v: Option<i64>| v.map_or(String::new(), |x| x.to_string());
                        s.push_str(&format!(
                            "{},\"{}\",{},{},{},\"{}\"\n",
                            c.suite,
                            c.identity,
                            opt(c.residual),
                            opt(c.required),
                            c.ok,
                            c.note
                        ));
                    }
                    s
                }
                Format::Text => checks.iter().map(|c| c.to_text() + "\n").collect(),
            };
            emit(&body, &cfg.out)?;
            eprintln!("{}: {} ({:.2?})", suite.name(), if ok { "passed" } else { "FAILED" }, start.elapsed());
            Ok(if ok { 0 } else { 1 })
        }
        Command::Compute { object } => {
            let art = objects::compute(object, &cfg)?;
            emit(&art.body, &cfg.out)?;
            eprintln!("{} ({:.2?})", art.summary, start.elapsed());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
