//! Command-line front end for `linoep-core`.
//!
//! `run` parses arguments, reads a vector set, dispatches to a transform and
//! writes a JSON [`RunReport`](report::RunReport). Exit codes: 0 success,
//! 2 input error, 3 numerical breakdown, 64 usage error. Diagnostics go to
//! the error stream only.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use linoep_core::{make_cancellation_example, make_nested_example, VectorSet, DEFAULT_TOL};

mod commands;
pub mod input;
pub mod report;

use input::{Format, InputError};
use report::{CommandName, Num, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{source}")]
    Input { path: PathBuf, source: InputError },
    #[error(transparent)]
    Core(#[from] linoep_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical_breakdown() => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        }
    }

    /// Stable identifier written into error reports.
    pub fn kind(&self) -> &'static str {
        use linoep_core::Error as E;
        match self {
            CliError::Io { .. } => "io",
            CliError::Input { .. } => "parse",
            CliError::Core(e) => match e {
                E::DimensionMismatch { .. } => "dimension_mismatch",
                E::EmptySet | E::EmptyVector => "empty",
                E::NonFinite { .. } => "non_finite",
                E::InvalidTolerance => "invalid_tolerance",
                E::NotLinearlyIndependent => "not_linearly_independent",
                E::DegenerateTailSum { .. } => "degenerate_tail_sum",
                E::SumMismatch { .. } => "sum_mismatch",
                E::TooFewVectors { .. } => "too_few_vectors",
                E::TooManyPermutations { .. } => "too_many_permutations",
                E::InvalidPermutation => "invalid_permutation",
                E::GenerationFailed { .. } => "generation_failed",
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "linoep",
    version,
    about = "Orthogonal and energy-preserving transforms of vector sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gram-Schmidt orthogonalization with coefficient matrix and column sums.
    Gsom(RunArgs),
    /// Non-orthogonal energy-preserving transform (c vectors, alphas, gamma).
    Linoep(RunArgs),
    /// The transform plus its n + 1 vector extension (d vectors, z2).
    Noep(RunArgs),
    /// Cross terms and solution families of a set.
    Analyze(RunArgs),
    /// Transform every ordering of the input.
    Sweep(SweepArgs),
    /// Write a seeded example set as CSV.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Vector set file (CSV or JSON).
    #[arg(long)]
    input: PathBuf,
    /// Overrides the format implied by the file extension.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Reorder the input, e.g. `--perm 2,0,1`.
    #[arg(long, value_delimiter = ',')]
    perm: Option<Vec<usize>>,
    /// Report destination; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Refuse inputs with more vectors than this (at most 8).
    #[arg(long, default_value_t = linoep_core::MAX_EXHAUSTIVE_N)]
    limit_n: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExampleKind {
    Nested,
    Cancellation,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: ExampleKind,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn read_vector_set(path: &Path, format: Option<Format>) -> Result<VectorSet, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let format = format.unwrap_or_else(|| Format::from_path(path));
    input::parse(&text, format).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

/// Rows formatted like report numbers, readable back by [`input::parse_csv`].
pub fn to_csv(set: &VectorSet, header: &str) -> String {
    let mut out = format!("# {header}\n");
    for v in set {
        let row: Vec<String> = v.as_slice().iter().map(|x| Num::format(*x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn execute(name: CommandName, args: &RunArgs, limit_n: usize) -> Result<RunReport, CliError> {
    let mut set = read_vector_set(&args.input, args.format)?;
    let perm = args.perm.as_deref();
    if let (Some(p), false) = (perm, name == CommandName::Sweep) {
        set = set.permuted(p)?;
    }
    let mut report = match name {
        CommandName::Gsom => commands::gsom(&set, args.tol),
        CommandName::Linoep => commands::linoep_cmd(&set, args.tol),
        CommandName::Noep => commands::noep(&set, args.tol),
        CommandName::Analyze => commands::analyze(&set, args.tol),
        CommandName::Sweep => commands::sweep(&set, args.tol, limit_n, perm),
    }?;
    report.permutation = args.perm.clone();
    Ok(report)
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
                return EXIT_OK;
            }
            let _ = stderr.write_all(rendered.as_bytes());
            return EXIT_USAGE;
        }
    };

    let (name, args, limit_n) = match &cli.command {
        Command::Gsom(a) => (CommandName::Gsom, a, 0),
        Command::Linoep(a) => (CommandName::Linoep, a, 0),
        Command::Noep(a) => (CommandName::Noep, a, 0),
        Command::Analyze(a) => (CommandName::Analyze, a, 0),
        Command::Sweep(s) => (CommandName::Sweep, &s.run, s.limit_n),
        Command::Generate(g) => return generate(g, stdout, stderr),
    };

    let (report, code) = match execute(name, args, limit_n) {
        Ok(report) => (report, EXIT_OK),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            (
                RunReport::error(name, e.exit_code(), e.kind()),
                e.exit_code(),
            )
        }
    };
    match write_output(args.output.as_deref(), &report.to_json(), stdout) {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn generate(args: &GenerateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (set, label) = match args.kind {
        ExampleKind::Nested => (make_nested_example(args.seed), "nested"),
        ExampleKind::Cancellation => (make_cancellation_example(args.seed), "cancellation"),
    };
    let result = set.map_err(CliError::from).and_then(|set| {
        let text = to_csv(&set, &format!("{label} example, seed {}", args.seed));
        write_output(args.output.as_deref(), &text, stdout)
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
