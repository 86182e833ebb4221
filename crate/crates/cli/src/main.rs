//! `towercheck`: run verification scenarios, print intersection tables and
//! cones of curves, and export scenarios as files.
//!
//! Exit codes: 0 when every check passes, 1 when at least one check fails
//! (the report is still emitted), 2 for usage and input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use towercheck::scenario::{
    builtin_scenario, list_scenarios, load_scenario_file, RunN, Scenario, ScenarioError, VerificationReport,
};

/// Environment variable naming a directory where reports are also written.
const REPORT_DIR_VAR: &str = "TOWERCHECK_REPORT_DIR";

#[derive(Parser, Debug)]
#[command(name = "towercheck", version, about = "Exact verification of bundle-tower intersection computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a scenario's checks and emit a verification report.
    Verify(RunArgs),
    /// Print the table a scenario declares.
    Table(RunArgs),
    /// Print the cone of curves a scenario declares.
    Cone(RunArgs),
    /// List the built-in scenarios.
    List(FormatArgs),
    /// Write a built-in scenario as a scenario file.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
struct Source {
    /// Name of a built-in scenario.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    scenario: Option<String>,
    /// Path of a scenario file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    /// An integer n >= 3, `symbolic`, or `range:A..B` (inclusive).
    #[arg(long, default_value = "symbolic", value_parser = parse_n)]
    n: NArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FormatArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long)]
    scenario: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum NArg {
    One(RunN),
    Range(i64, i64),
}

impl NArg {
    fn values(&self) -> Vec<RunN> {
        match self {
            NArg::One(n) => vec![n.clone()],
            NArg::Range(a, b) => (*a..=*b).map(RunN::At).collect(),
        }
    }
}

fn parse_n(s: &str) -> Result<NArg, String> {
    if s == "symbolic" {
        return Ok(NArg::One(RunN::Symbolic));
    }
    if let Some(range) = s.strip_prefix("range:") {
        let (a, b) = range.split_once("..").ok_or_else(|| format!("expected range:A..B, got {s:?}"))?;
        let a: i64 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
        let b: i64 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
        if a > b {
            return Err(format!("empty range {a}..{b}"));
        }
        return Ok(NArg::Range(a, b));
    }
    s.parse().map(|k| NArg::One(RunN::At(k))).map_err(|_| format!("expected an integer, `symbolic` or range:A..B, got {s:?}"))
}

/// An input or usage error, reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl From<ScenarioError> for UsageError {
    fn from(e: ScenarioError) -> Self {
        UsageError(e.to_string())
    }
}

fn load(source: &Source) -> Result<Scenario, UsageError> {
    match (&source.scenario, &source.file) {
        (Some(name), _) => Ok(builtin_scenario(name)?),
        (None, Some(path)) => Ok(load_scenario_file(path)?),
        (None, None) => Err(UsageError("one of --scenario or --file is required".into())),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), UsageError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
    s.push('\n');
    s
}

/// Runs `f` at every requested `n` and renders the results together.
fn render_all<T: serde::Serialize>(
    args: &RunArgs,
    f: impl FnMut(&RunN) -> Result<T, ScenarioError>,
    text: impl Fn(&T) -> String,
) -> Result<(Vec<T>, String), UsageError> {
    let outputs = args.n.values().iter().map(f).collect::<Result<Vec<T>, _>>()?;
    let rendered = match (args.format, &args.n) {
        (Format::Json, NArg::One(_)) => to_json(&outputs[0]),
        (Format::Json, NArg::Range(..)) => to_json(&outputs),
        (Format::Text, _) => outputs.iter().map(&text).collect::<Vec<_>>().join("\n"),
    };
    Ok((outputs, rendered))
}

fn write_report_copy(reports: &[VerificationReport], format: Format) -> Result<(), UsageError> {
    let Some(dir) = std::env::var_os(REPORT_DIR_VAR) else {
        return Ok(());
    };
    let dir = PathBuf::from(dir);
    fs::create_dir_all(&dir).map_err(|e| UsageError(format!("cannot create {}: {e}", dir.display())))?;
    for r in reports {
        let (ext, body) = match format {
            Format::Json => ("json", to_json(r)),
            Format::Text => ("txt", r.render_text()),
        };
        let path = dir.join(format!("{}-n{}.{ext}", r.scenario, r.n));
        fs::write(&path, body).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::Verify(args) => {
            let scenario = load(&args.source)?;
            let (reports, rendered) = render_all(&args, |n| scenario.run(n), |r| r.render_text())?;
            emit(&rendered, args.output.as_deref())?;
            write_report_copy(&reports, args.format)?;
            Ok(reports.iter().all(|r| r.all_pass()))
        }
        Command::Table(args) => {
            let scenario = load(&args.source)?;
            let (_, rendered) = render_all(&args, |n| scenario.table(n), |t| t.render_text())?;
            emit(&rendered, args.output.as_deref())?;
            Ok(true)
        }
        Command::Cone(args) => {
            let scenario = load(&args.source)?;
            let (cones, rendered) = render_all(&args, |n| scenario.cone(n), |c| c.render_text())?;
            emit(&rendered, args.output.as_deref())?;
            Ok(cones.iter().all(|c| c.hypotheses.iter().all(|h| h.holds)))
        }
        Command::List(args) => {
            let list = list_scenarios();
            let rendered = match args.format {
                Format::Json => to_json(&list),
                Format::Text => {
                    let width = list.iter().map(|s| s.name.len()).max().unwrap_or(0);
                    list.iter()
                        .map(|s| format!("{:width$}  {:11}  {}\n", s.name, s.n_policy.as_str(), s.description))
                        .collect()
                }
            };
            emit(&rendered, None)?;
            Ok(true)
        }
        Command::Export(args) => {
            let scenario = builtin_scenario(&args.scenario)?;
            let mut text = scenario.to_json();
            text.push('\n');
            emit(&text, args.output.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
