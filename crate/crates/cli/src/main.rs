//! `reeskit`: JSON in, JSON or CSV out.
//!
//! Exit codes: 0 on success, 1 when well-formed input fails a mathematical
//! condition (error JSON on stderr), 2 on malformed input or bad usage.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use reeskit_core::curves::curve_report;
use reeskit_core::families::{alpha_map, hypothesis_h_audit, semicontinuity_report, strata_csv};
use reeskit_core::invariants::{self, report};
use reeskit_core::mhs::{self, alpha_mhs, deligne_splitting, is_r_split};
use reeskit_core::{CoreError, CurveConfig, FilteredSpace, MixedHodgeStructure, SampledFamily, TrifilteredSpace};

mod selftest;

#[derive(Parser)]
#[command(
    name = "reeskit",
    version,
    about = "Rees-bundle invariants of filtered vector spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chern data, α, K₀ class and splitting type of a trifiltered space.
    Invariants(Io),
    /// Validate a mixed Hodge structure.
    CheckMhs(Io),
    /// Deligne splitting of a mixed Hodge structure.
    DeligneSplit(Io),
    /// α of a mixed Hodge structure or trifiltered space (detected by the `G` key).
    Alpha(Io),
    /// Period-matrix α of a punctured nodal curve.
    CurveAlpha(Io),
    /// Stratify a sampled family by α.
    Stratify(Io),
    /// Run the built-in worked examples and print a pass/fail table.
    Selftest(Io),
}

#[derive(Args)]
struct Io {
    /// Input JSON file (default: standard input).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Numerical tolerance (curve commands).
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for the randomized part of `selftest`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Domain(CoreError),
    Malformed(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        if e.is_domain() {
            Failure::Domain(e)
        } else {
            Failure::Malformed(e.to_string())
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn malformed(e: impl ToString) -> Failure {
    Failure::Malformed(e.to_string())
}

fn read_input(io: &Io) -> Outcome<Value> {
    let text = match &io.input {
        Some(path) => fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(malformed)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(malformed)
}

fn field<T: serde::de::DeserializeOwned>(v: &Value, key: &str) -> Outcome<T> {
    let raw = v.get(key).ok_or_else(|| malformed(format!("missing field `{key}`")))?;
    serde_json::from_value(raw.clone()).map_err(|e| malformed(format!("field `{key}`: {e}")))
}

/// Parses the two filtrations separately so that failures of the mixed
/// Hodge conditions surface as structured domain errors.
fn parse_mhs(v: &Value) -> Outcome<MixedHodgeStructure> {
    let w: FilteredSpace = field(v, "W")?;
    let f: FilteredSpace = field(v, "F")?;
    if let Some(n) = v.get("ambient_dim").and_then(Value::as_u64) {
        if n as usize != w.ambient_dim() {
            return Err(malformed(format!(
                "ambient_dim {n} does not match W ({})",
                w.ambient_dim()
            )));
        }
    }
    Ok(mhs::validate(w, f)?)
}

fn parse_triple(v: &Value) -> Outcome<TrifilteredSpace> {
    serde_json::from_value(v.clone()).map_err(malformed)
}

enum Input {
    Mhs(MixedHodgeStructure),
    Triple(TrifilteredSpace),
}

fn parse_either(v: &Value) -> Outcome<Input> {
    if v.get("G").is_some() {
        parse_triple(v).map(Input::Triple)
    } else {
        parse_mhs(v).map(Input::Mhs)
    }
}

fn to_json<T: Serialize>(x: &T) -> Outcome<Value> {
    serde_json::to_value(x).map_err(|e| malformed(format!("serialization: {e}")))
}

fn table2_rows(t: &reeskit_core::Table2) -> Vec<[i64; 3]> {
    t.iter().map(|(&(p, q), &d)| [p, q, d as i64]).collect()
}

fn require_json(io: &Io) -> Outcome<()> {
    match io.format {
        Some(Format::Csv) => Err(malformed("csv output is only available for `stratify`")),
        _ => Ok(()),
    }
}

/// Output text for one command, or the selftest verdict.
fn dispatch(cmd: &Command) -> Outcome<(String, bool)> {
    let json_out = |v: Value| serde_json::to_string_pretty(&v).map(|s| (s, true)).map_err(malformed);
    match cmd {
        Command::Invariants(io) => {
            require_json(io)?;
            let t = match parse_either(&read_input(io)?)? {
                Input::Mhs(m) => m.triple().clone(),
                Input::Triple(t) => t,
            };
            json_out(to_json(&report(&t)?)?)
        }
        Command::CheckMhs(io) => {
            require_json(io)?;
            let m = parse_mhs(&read_input(io)?)?;
            json_out(json!({
                "valid": true,
                "ambient_dim": m.ambient_dim(),
                "weights": m.weights(),
                "hodge_numbers": table2_rows(&m.hodge_numbers()?),
                "r_split": is_r_split(&m)?,
                "length": m.length(),
            }))
        }
        Command::DeligneSplit(io) => {
            require_json(io)?;
            let m = parse_mhs(&read_input(io)?)?;
            let split = deligne_splitting(&m)?;
            json_out(json!({
                "ambient_dim": m.ambient_dim(),
                "r_split": is_r_split(&m)?,
                "pieces": to_json(&split)?,
            }))
        }
        Command::Alpha(io) => {
            require_json(io)?;
            let (alpha, kind) = match parse_either(&read_input(io)?)? {
                Input::Mhs(m) => (alpha_mhs(&m)?, "mhs"),
                Input::Triple(t) => (invariants::alpha(&t)?, "trifiltered"),
            };
            json_out(json!({ "alpha": alpha, "input": kind }))
        }
        Command::CurveAlpha(io) => {
            require_json(io)?;
            let mut cfg: CurveConfig = serde_json::from_value(read_input(io)?).map_err(malformed)?;
            if let Some(tol) = io.tol {
                if !(tol.is_finite() && tol > 0.0) {
                    return Err(malformed(format!("tolerance must be positive, got {tol}")));
                }
                cfg.tol = tol;
            }
            json_out(to_json(&curve_report(&cfg)?)?)
        }
        Command::Stratify(io) => {
            let fam: SampledFamily = serde_json::from_value(read_input(io)?).map_err(malformed)?;
            let strata = alpha_map(&fam)?;
            if io.format == Some(Format::Csv) {
                return Ok((strata_csv(&fam, &strata)?, true));
            }
            json_out(json!({
                "strata": to_json(&strata)?,
                "h_audit": to_json(&hypothesis_h_audit(&fam))?,
                "semicontinuity": to_json(&semicontinuity_report(&fam)?)?,
            }))
        }
        Command::Selftest(io) => {
            if io.input.is_some() {
                return Err(malformed("`selftest` takes no input"));
            }
            let rows = selftest::run(io.seed);
            let ok = rows.iter().all(|r| r.pass);
            let text = match io.format {
                Some(Format::Json) => serde_json::to_string_pretty(&rows).map_err(malformed)?,
                Some(Format::Csv) => return Err(malformed("csv output is not available for `selftest`")),
                None => selftest::table(&rows),
            };
            Ok((text, ok))
        }
    }
}

fn io_of(cmd: &Command) -> &Io {
    match cmd {
        Command::Invariants(io)
        | Command::CheckMhs(io)
        | Command::DeligneSplit(io)
        | Command::Alpha(io)
        | Command::CurveAlpha(io)
        | Command::Stratify(io)
        | Command::Selftest(io) => io,
    }
}

fn write_output(io: &Io, mut text: String) -> io::Result<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &io.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok((text, ok)) => {
            if let Err(e) = write_output(io_of(&cli.command), text) {
                eprintln!("{}", json!({ "error": { "kind": "io", "detail": e.to_string() } }));
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(e)) => {
            let body = serde_json::to_value(&e).unwrap_or(Value::Null);
            eprintln!("{}", json!({ "error": body, "message": e.to_string() }));
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("{}", json!({ "error": { "kind": "malformed_input" }, "message": msg }));
            ExitCode::from(2)
        }
    }
}
