//! Argument parsing, pipeline orchestration and output rendering for the
//! `qmap` binary.
//!
//! Exit codes: 0 success, 1 internal failure, 2 usage error, 3 invalid
//! geometry.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde_json::{json, Map, Value};

use qmap_core::selfcheck::{self, CheckResult};
use qmap_core::{compute_ck, compute_report, expand_i, extract_i0_i1, json as qjson};
use qmap_core::{diagnostics, quasimap_potential, GeometrySpec};

pub mod table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GEOMETRY: i32 = 3;

pub const ORDER_MAX_VAR: &str = "QM_ORDER_MAX";
pub const DEFAULT_ORDER_MAX: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// I_0 and I_1 of the I-function
    Ifun,
    /// Initial constants C_0..C_{n-1}
    Ck,
    /// Quasimap potential and its closed-form diagnostics
    Potential,
    /// Gromov-Witten potential, mirror map and invariants N_d
    Gw,
    /// Built-in golden values and property checks
    Verify,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Comma-separated list of positive degrees; the empty string is the empty
/// list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeList(pub Vec<u32>);

impl FromStr for DegreeList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|e| format!("invalid degree {part:?}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qmap",
    version,
    about = "Exact elliptic quasimap and genus-1 Gromov-Witten potentials"
)]
struct Cli {
    command: Command,
    /// Ambient projective space is P^{n-1}
    #[arg(long)]
    n: Option<usize>,
    /// Hypersurface degrees l_a, comma separated (may be empty)
    #[arg(long, default_value = "", value_parser = DegreeList::from_str)]
    l: DegreeList,
    /// Bundle degrees l'_b, comma separated (may be empty)
    #[arg(long, default_value = "", value_parser = DegreeList::from_str)]
    lp: DegreeList,
    /// Truncation order D in q
    #[arg(long, default_value_t = 10)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// Absent only for `verify`.
    pub spec: Option<GeometrySpec>,
    pub order: usize,
    pub format: Format,
    pub output_path: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn order_cap() -> usize {
    std::env::var(ORDER_MAX_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORDER_MAX)
}

/// Parses `argv` (including the program name) with the order cap taken from
/// `QM_ORDER_MAX`.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    parse_args_with_cap(argv, order_cap())
}

pub fn parse_args_with_cap<I, T>(argv: I, order_max: usize) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        CliError {
            code,
            message: e.render().to_string(),
        }
    })?;
    if cli.order < 1 {
        return Err(CliError::usage("--order must be at least 1"));
    }
    if cli.order > order_max {
        return Err(CliError::usage(format!(
            "--order {} exceeds the cap {order_max} (set {ORDER_MAX_VAR} to raise it)",
            cli.order
        )));
    }
    let spec = match (cli.command, cli.n) {
        (Command::Verify, _) => None,
        (_, None) => return Err(CliError::usage("--n is required for this command")),
        (_, Some(n)) => Some(
            GeometrySpec::new(n, cli.l.0, cli.lp.0).map_err(|e| CliError {
                code: EXIT_GEOMETRY,
                message: e.to_string(),
            })?,
        ),
    };
    Ok(RunConfig {
        command: cli.command,
        spec,
        order: cli.order,
        format: cli.format,
        output_path: cli.out,
    })
}

/// Computes the JSON document for a non-`verify` command.
pub fn compute_document(
    command: Command,
    spec: &GeometrySpec,
    order: usize,
) -> qmap_core::Result<Value> {
    let mut doc = Map::new();
    doc.insert("spec".into(), qjson::spec(spec));
    doc.insert("order".into(), json!(order));
    match command {
        Command::Ifun => {
            let (i0, i1) = extract_i0_i1(&expand_i(spec, order, 1)?)?;
            doc.insert("I0".into(), qjson::series(&i0));
            doc.insert("I1".into(), qjson::series(&i1));
        }
        Command::Ck => {
            doc.insert(
                "C".into(),
                qjson::initial_constants(&compute_ck(spec, order)?),
            );
        }
        Command::Potential => {
            let c = compute_ck(spec, order)?;
            doc.insert(
                "F_qm".into(),
                qjson::series(&quasimap_potential(spec, &c, order)?),
            );
            doc.insert(
                "diagnostics".into(),
                qjson::diagnostics(&diagnostics(spec, &c, order)?),
            );
        }
        Command::Gw => return Ok(qjson::report(&compute_report(spec, order)?)),
        Command::Verify => unreachable!("verify has no geometry"),
    }
    Ok(Value::Object(doc))
}

/// Core self-checks plus the output-format contract.
pub fn verify_checks() -> Vec<CheckResult> {
    let mut checks = selfcheck::run_all();
    let outcome = (|| -> Result<(bool, String), String> {
        let spec = GeometrySpec::new(4, vec![2], vec![2]).map_err(|e| e.to_string())?;
        let doc = compute_document(Command::Gw, &spec, 6).map_err(|e| e.to_string())?;
        let text = qjson::to_canonical_string(&doc);
        let reparsed: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let round_trip = qjson::to_canonical_string(&reparsed) == text;
        let same_content = table::parse(&table::render(&doc)) == table::flatten(&doc);
        Ok((round_trip && same_content, String::new()))
    })();
    checks.push(match outcome {
        Ok((passed, detail)) => CheckResult {
            name: "JSON round trip and table parity".into(),
            passed,
            detail,
        },
        Err(e) => CheckResult {
            name: "JSON round trip and table parity".into(),
            passed: false,
            detail: e,
        },
    });
    checks
}

fn verify_document(checks: &[CheckResult]) -> Value {
    json!({
        "passed": checks.iter().all(|c| c.passed),
        "checks": checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect::<Vec<_>>(),
    })
}

fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => qjson::to_canonical_string(doc),
        Format::Table => table::render(doc),
    }
}

fn emit(text: &str, config: &RunConfig) -> Result<(), CliError> {
    match &config.output_path {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError {
            code: EXIT_INTERNAL,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs a parsed configuration; returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    let result = (|| -> Result<i32, CliError> {
        match (&config.command, &config.spec) {
            (Command::Verify, _) => {
                let checks = verify_checks();
                let text = match config.format {
                    Format::Json => qjson::to_canonical_string(&verify_document(&checks)),
                    Format::Table => table::render_checks(&checks),
                };
                emit(&text, config)?;
                Ok(if checks.iter().all(|c| c.passed) {
                    EXIT_OK
                } else {
                    EXIT_INTERNAL
                })
            }
            (command, Some(spec)) => {
                let doc = compute_document(*command, spec, config.order).map_err(|e| CliError {
                    code: EXIT_INTERNAL,
                    message: e.to_string(),
                })?;
                emit(&render(&doc, config.format), config)?;
                Ok(EXIT_OK)
            }
            (_, None) => Err(CliError::usage("--n is required for this command")),
        }
    })();
    result.unwrap_or_else(|e| {
        eprintln!("qmap: {e}");
        e.code
    })
}

/// Entry point shared by the binary and tests.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(config) => run(&config),
        Err(e) if e.code == EXIT_OK => {
            print!("{}", e.message);
            EXIT_OK
        }
        Err(e) => {
            eprint!("{}", e.message);
            if !e.message.ends_with('\n') {
                eprintln!();
            }
            e.code
        }
    }
}
