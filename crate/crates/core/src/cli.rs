//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid arguments, 2 no root or degenerate
//! domain, 3 a verification suite failed.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::logmap::{solve_log_theorem, LogTheoremId};
use crate::radii::{
    make_table, solve_ah, solve_cor34, solve_cor34_unit, solve_cor35, solve_cor35_unit,
    solve_theorem31, solve_theorem33, solve_theorem36, to_csv, RadiusResult, TableId,
};
use crate::verify::{run_suite, Suite};
use crate::{round_sig6, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "landau",
    version,
    about = "Univalence and schlicht-disk radii for bounded polyanalytic functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RadiusTheorem {
    T31,
    T33,
    T36,
    C34,
    C35,
    C34u,
    C35u,
    Ah,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LogTheorem {
    T41,
    T42,
    T43,
    C44,
    C45,
    C46,
    C47,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Identities,
    Lemma22,
    Coeff,
    Distortion,
    Covering,
    Oracle,
    All,
}

#[derive(Debug, clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a univalence radius and its schlicht-disk radius.
    Radii {
        #[arg(long, value_enum)]
        theorem: RadiusTheorem,
        #[arg(long = "M")]
        m: f64,
        /// Order of the polyanalytic function; implied for c34/c35.
        #[arg(long)]
        alpha: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute a published table next to its printed values.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[command(flatten)]
        output: Output,
    },
    /// Schlicht disk in the range of f = exp(F).
    Log {
        #[arg(long, value_enum)]
        theorem: LogTheorem,
        #[arg(long = "M")]
        m: f64,
        #[arg(long)]
        alpha: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Run sampling checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Parses `argv` (program name first), dispatches, and returns the exit code.
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if e.is_domain_failure() {
                EXIT_DOMAIN
            } else {
                EXIT_INVALID
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

fn require_alpha(alpha: Option<usize>, fixed: Option<usize>) -> Result<usize, Failure> {
    match (alpha, fixed) {
        (Some(a), Some(f)) if a != f => Err(Failure::Usage(format!(
            "this theorem fixes alpha = {f}, got {a}"
        ))),
        (_, Some(f)) => Ok(f),
        (Some(a), None) => Ok(a),
        (None, None) => Err(Failure::Usage(
            "--alpha is required for this theorem".into(),
        )),
    }
}

fn solve_radius(
    theorem: RadiusTheorem,
    m: f64,
    alpha: Option<usize>,
) -> Result<RadiusResult, Failure> {
    let fixed = match theorem {
        RadiusTheorem::C34 | RadiusTheorem::C34u => Some(2),
        RadiusTheorem::C35 | RadiusTheorem::C35u => Some(3),
        _ => None,
    };
    let alpha = require_alpha(alpha, fixed)?;
    Ok(match theorem {
        RadiusTheorem::T31 => solve_theorem31(m, alpha)?,
        RadiusTheorem::T33 => solve_theorem33(m, alpha)?,
        RadiusTheorem::T36 => solve_theorem36(m, alpha)?,
        RadiusTheorem::C34 => solve_cor34(m)?,
        RadiusTheorem::C35 => solve_cor35(m)?,
        RadiusTheorem::C34u => solve_cor34_unit(m)?,
        RadiusTheorem::C35u => solve_cor35_unit(m)?,
        RadiusTheorem::Ah => solve_ah(m, alpha)?,
    })
}

fn log_id(theorem: LogTheorem) -> LogTheoremId {
    match theorem {
        LogTheorem::T41 => LogTheoremId::T41,
        LogTheorem::T42 => LogTheoremId::T42,
        LogTheorem::T43 => LogTheoremId::T43,
        LogTheorem::C44 => LogTheoremId::C44,
        LogTheorem::C45 => LogTheoremId::C45,
        LogTheorem::C46 => LogTheoremId::C46,
        LogTheorem::C47 => LogTheoremId::C47,
    }
}

fn suite(arg: SuiteArg) -> Suite {
    match arg {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Lemma22 => Suite::Lemma22,
        SuiteArg::Coeff => Suite::Coeff,
        SuiteArg::Distortion => Suite::Distortion,
        SuiteArg::Covering => Suite::Covering,
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::All => Suite::All,
    }
}

/// Rounds every float to six significant digits; integral values print without a fraction.
fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig6(n.as_f64().unwrap_or(f64::NAN));
            if x.fract() == 0.0 && x.abs() < 1e15 {
                Value::from(x as i64)
            } else {
                serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let v = serde_json::to_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text =
        serde_json::to_string(&round_value(v)).map_err(|e| Failure::Usage(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Flat CSV from a list of JSON objects sharing the same scalar keys.
fn to_csv_records<T: Serialize>(records: &[T], columns: &[&str]) -> Result<String, Failure> {
    let mut out = columns.join(",");
    out.push('\n');
    for record in records {
        let v =
            round_value(serde_json::to_value(record).map_err(|e| Failure::Usage(e.to_string()))?);
        let line: Vec<String> = columns.iter().map(|c| csv_cell(&v[*c])).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(Failure::Io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(Failure::Io)
        }
    }
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Radii {
            theorem,
            m,
            alpha,
            output,
        } => {
            let res = solve_radius(theorem, m, alpha)?;
            let text = match output.format {
                Format::Json => to_json(&res)?,
                Format::Csv => to_csv_records(
                    &[res],
                    &["theorem", "M", "alpha", "r", "sigma", "degenerate"],
                )?,
            };
            emit(&output, &text)?;
            Ok(EXIT_OK)
        }
        Command::Tables { which, output } => {
            let id = TableId::ALL[which as usize - 1];
            let rows = make_table(id)?;
            let text = match output.format {
                Format::Json => to_json(&rows)?,
                Format::Csv => to_csv(&rows),
            };
            emit(&output, &text)?;
            Ok(EXIT_OK)
        }
        Command::Log {
            theorem,
            m,
            alpha,
            output,
        } => {
            let id = log_id(theorem);
            let alpha = require_alpha(alpha, id.fixed_alpha())?;
            let res = solve_log_theorem(id, m, alpha)?;
            let text = match output.format {
                Format::Json => to_json(&res)?,
                Format::Csv => {
                    to_csv_records(&[res], &["theorem", "M", "alpha", "r", "sigma", "w", "mu"])?
                }
            };
            emit(&output, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite: s,
            seed,
            output,
        } => {
            let reports = run_suite(suite(s), seed)?;
            let text = match output.format {
                Format::Json => to_json(&reports)?,
                Format::Csv => {
                    to_csv_records(&reports, &["kind", "margin", "samples", "seed", "passed"])?
                }
            };
            emit(&output, &text)?;
            Ok(if reports.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_VERIFY
            })
        }
    }
}
