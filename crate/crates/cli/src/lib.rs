//! Command-line front end for `lts-core`.
//!
//! Each subcommand reads one JSON document, runs a library operation and prints
//! a JSON report on stdout with a one-line summary on stderr. The exit status
//! is 0 for an affirmative verdict, 1 for a negative one and 2 for any error.

pub mod commands;
pub mod doc;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

pub use commands::Verdict;

#[derive(Debug, Parser)]
#[command(name = "lts", version, about = "Exact computations with Lie triple systems and their extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the three LTS axioms.
    VerifyLts(Input),
    /// Check the two representation identities.
    VerifyRep(Input),
    /// Dimensions of Z, B and H in odd degree, plus a δ∘δ = 0 check.
    Cohomology(Input),
    /// Check the non-abelian 3-cocycle identities.
    VerifyCocycle(Input),
    /// Build the extension of a cocycle and check it is an LTS.
    Extend(Input),
    /// Read off the cocycle of an extension for its section.
    Extract(Input),
    /// Decide equivalence of two cocycles, by witness or by search.
    Equivalent(Input),
    /// Maurer-Cartan test for a lifted cocycle or a degree-1 cochain.
    McCheck(Input),
    /// Graded bracket of two cochains, with antisymmetry and optional Jacobi checks.
    Bracket(Input),
    /// Gauge action of φ on a lifted cocycle, compared with the shifted cocycle.
    Gauge(Input),
    /// Whether an automorphism pair is inducible.
    Inducible(Input),
    /// Whether the Wells obstruction of a pair vanishes.
    Wells(Input),
    /// Exhaustive check of the Wells exact sequences.
    ExactSeq(Input),
    /// Linear inducibility test for abelian extensions.
    AbelianInducible(Input),
}

#[derive(Debug, Clone, clap::Args)]
pub struct Input {
    /// JSON input document.
    #[arg(value_name = "FILE")]
    pub file: PathBuf,
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Options {
    /// Odd cohomology degree 2n−1.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Decide by exhaustive search instead of checking a supplied witness.
    #[arg(long, global = true)]
    pub search: bool,
    /// Maximum number of candidates an exhaustive search may visit.
    #[arg(long, global = true, default_value_t = lts_core::enumerate::DEFAULT_BUDGET)]
    pub budget: u128,
    /// Matrix φ: g → h used as the witness.
    #[arg(long, global = true, value_name = "NAME")]
    pub phi: Option<String>,
    /// Replace the extension's section with this matrix (for `equivalent`, the right operand's).
    #[arg(long, global = true, value_name = "NAME")]
    pub section: Option<String>,
    /// Automorphism α of the base.
    #[arg(long, global = true, value_name = "NAME")]
    pub alpha: Option<String>,
    /// Automorphism β of the kernel.
    #[arg(long, global = true, value_name = "NAME")]
    pub beta: Option<String>,
    /// Write the produced document (or the report) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// LTS to use when the document holds several.
    #[arg(long, global = true, value_name = "NAME")]
    pub lts: Option<String>,
    /// Representation to use when the document holds several.
    #[arg(long, global = true, value_name = "NAME")]
    pub rep: Option<String>,
    /// Cocycle to use; for `extract`, the cocycle to compare against.
    #[arg(long, global = true, value_name = "NAME")]
    pub cocycle: Option<String>,
    /// Extension to use when the document holds several.
    #[arg(long, global = true, value_name = "NAME")]
    pub extension: Option<String>,
    /// Degree-1 cochain for `mc-check`.
    #[arg(long, global = true, value_name = "NAME")]
    pub cochain: Option<String>,
    /// First operand of `equivalent` or `bracket`.
    #[arg(long, global = true, value_name = "NAME")]
    pub left: Option<String>,
    /// Second operand of `equivalent` or `bracket`.
    #[arg(long, global = true, value_name = "NAME")]
    pub right: Option<String>,
    /// Third cochain, adding a graded Jacobi check to `bracket`.
    #[arg(long, global = true, value_name = "NAME")]
    pub third: Option<String>,
    /// Add a `timings` object to the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

impl Command {
    pub fn input(&self) -> &Input {
        match self {
            Command::VerifyLts(i)
            | Command::VerifyRep(i)
            | Command::Cohomology(i)
            | Command::VerifyCocycle(i)
            | Command::Extend(i)
            | Command::Extract(i)
            | Command::Equivalent(i)
            | Command::McCheck(i)
            | Command::Bracket(i)
            | Command::Gauge(i)
            | Command::Inducible(i)
            | Command::Wells(i)
            | Command::ExactSeq(i)
            | Command::AbelianInducible(i) => i,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyLts(_) => "verify-lts",
            Command::VerifyRep(_) => "verify-rep",
            Command::Cohomology(_) => "cohomology",
            Command::VerifyCocycle(_) => "verify-cocycle",
            Command::Extend(_) => "extend",
            Command::Extract(_) => "extract",
            Command::Equivalent(_) => "equivalent",
            Command::McCheck(_) => "mc-check",
            Command::Bracket(_) => "bracket",
            Command::Gauge(_) => "gauge",
            Command::Inducible(_) => "inducible",
            Command::Wells(_) => "wells",
            Command::ExactSeq(_) => "exact-seq",
            Command::AbelianInducible(_) => "abelian-inducible",
        }
    }
}

/// What a run produced: the report text for stdout, a summary for stderr, and the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: String,
    pub summary: String,
    pub code: i32,
}

/// An error carried to the report as `{"error": {"code", "message", ...}}`.
#[derive(Debug, Clone)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub path: Option<String>,
    pub line: Option<usize>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: "usage", message: message.into(), path: None, line: None }
    }
}

impl From<doc::DocError> for Failure {
    fn from(e: doc::DocError) -> Self {
        Failure { code: e.code, message: e.message, path: Some(e.path), line: e.line }
    }
}

impl From<lts_core::Error> for Failure {
    fn from(e: lts_core::Error) -> Self {
        use lts_core::Error as E;
        let code = match &e {
            E::BudgetExceeded { .. } => "budget_exceeded",
            E::SearchOverRationals => "search_over_rationals",
            E::NotPrime(_) => "composite_modulus",
            E::FieldMismatch(..) | E::Shape(_) => "shape",
            E::Singular(_) | E::NotAutomorphism(_) => "not_automorphism",
            E::Inconsistent(_) => "internal",
            _ => "invalid",
        };
        Failure { code, message: e.to_string(), path: None, line: None }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let kind = e.kind();
            if matches!(kind, clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
                return Outcome { report: e.to_string(), summary: String::new(), code: 0 };
            }
            let failure = Failure::usage(e.to_string().trim_end().to_string());
            return failed("lts", failure);
        }
    };
    run(&cli.command, &cli.opts)
}

pub fn run(command: &Command, opts: &Options) -> Outcome {
    let name = command.name();
    let file = &command.input().file;
    let start = Instant::now();
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            let f = Failure { code: "io", message: format!("{}: {e}", file.display()), path: None, line: None };
            return failed(name, f);
        }
    };
    let document = match doc::parse(&text) {
        Ok(d) => d,
        Err(e) => return failed(name, e.into()),
    };
    let parsed = start.elapsed();
    let result = commands::dispatch(command, opts, &document);
    let ran = start.elapsed() - parsed;
    match result {
        Err(f) => failed(name, f),
        Ok(done) => {
            let mut body = Map::new();
            body.insert("command".into(), json!(name));
            body.insert("verdict".into(), json!(done.verdict.as_str()));
            for (k, v) in done.body {
                body.insert(k, v);
            }
            if opts.timings {
                body.insert(
                    "timings".into(),
                    json!({ "parse_ms": parsed.as_secs_f64() * 1e3, "run_ms": ran.as_secs_f64() * 1e3 }),
                );
            }
            let report = to_text(&Value::Object(body));
            if let Some(path) = &opts.out {
                let contents = done.produced.as_ref().map(doc::emit).unwrap_or_else(|| report.clone());
                if let Err(e) = std::fs::write(path, contents) {
                    let f = Failure { code: "io", message: format!("{}: {e}", path.display()), path: None, line: None };
                    return failed(name, f);
                }
            }
            Outcome {
                report,
                summary: format!("{name}: {} ({})", done.verdict.as_str(), done.summary),
                code: done.verdict.exit_code(),
            }
        }
    }
}

fn failed(name: &str, f: Failure) -> Outcome {
    let mut err = Map::new();
    err.insert("code".into(), json!(f.code));
    err.insert("message".into(), json!(f.message));
    if let Some(p) = &f.path {
        err.insert("path".into(), json!(p));
    }
    if let Some(l) = f.line {
        err.insert("line".into(), json!(l));
    }
    let report = to_text(&json!({ "command": name, "error": Value::Object(err) }));
    let location = f.path.as_deref().map(|p| format!(" at {p}")).unwrap_or_default();
    Outcome { report, summary: format!("{name}: error [{}]{location}: {}", f.code, f.message), code: 2 }
}

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports always serialize");
    s.push('\n');
    s
}
