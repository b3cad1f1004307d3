use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coreep::{Method, TolerancePolicy};
use coreep_cli::{cmd_inverse, cmd_solve, CliError, Format, InverseKind, InverseOptions, SolveOptions};

/// Fuzzy linear systems and core-EP inverses.
#[derive(Parser)]
#[command(name = "coreep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a fuzzy linear system from a JSON problem file.
    Solve(SolveCmd),
    /// Print a generalized inverse of a matrix.
    Inverse(InverseCmd),
}

#[derive(Args)]
struct Tolerances {
    /// Relative singular-value cutoff for numerical rank.
    #[arg(long, default_value_t = TolerancePolicy::DEFAULT_RANK_REL_TOL)]
    rank_tol: f64,
    /// Residual bound for membership and solution checks.
    #[arg(long, default_value_t = TolerancePolicy::DEFAULT_RESIDUAL_TOL)]
    residual_tol: f64,
    /// Tolerance for matrix-equality checks.
    #[arg(long, default_value_t = TolerancePolicy::DEFAULT_EQUALITY_TOL)]
    eq_tol: f64,
}

impl Tolerances {
    fn policy(&self) -> Result<TolerancePolicy, CliError> {
        Ok(TolerancePolicy::new(self.rank_tol, self.residual_tol, self.eq_tol)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Inverse,
    #[value(name = "core-ep")]
    CoreEp,
    #[value(name = "method2-i")]
    Method2I,
    #[value(name = "method2-ii")]
    Method2II,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        match self {
            MethodArg::Auto => None,
            MethodArg::Inverse => Some(Method::Inverse),
            MethodArg::CoreEp => Some(Method::CoreEp),
            MethodArg::Method2I => Some(Method::Method2I),
            MethodArg::Method2II => Some(Method::Method2II),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "core-ep")]
    CoreEp,
    Core,
    #[value(name = "moore-penrose")]
    MoorePenrose,
}

#[derive(Args)]
struct SolveCmd {
    /// Problem file: {"a": [[...]], "y": [{"lower": [c0, c1], "upper": [c0, c1]}, ...]}
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[command(flatten)]
    tol: Tolerances,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Number of r values in [0, 1] used for residual checks.
    #[arg(long, default_value_t = coreep::DEFAULT_GRID as u64, value_parser = clap::value_parser!(u64).range(2..))]
    grid: u64,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct InverseCmd {
    /// Matrix file: [[...], ...] or {"matrix": [[...], ...]}
    input: PathBuf,
    #[arg(long, value_enum, default_value = "core-ep")]
    kind: KindArg,
    /// Also print the core-EP decomposition U, T, S, N and the index.
    #[arg(long)]
    show_decomposition: bool,
    /// Significant digits per printed entry.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=17))]
    precision: u64,
    /// Treat the input as a problem file and use its associated matrix S.
    #[arg(long)]
    associated: bool,
    #[command(flatten)]
    tol: Tolerances,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Solve(cmd) => {
            let opts = SolveOptions {
                method: cmd.method.method(),
                tol: cmd.tol.policy()?,
                format: match cmd.format {
                    FormatArg::Text => Format::Text,
                    FormatArg::Json => Format::Json,
                },
                grid: cmd.grid as usize,
                output: cmd.output,
            };
            cmd_solve(&cmd.input, &opts, &mut stdout)
        }
        Command::Inverse(cmd) => {
            let opts = InverseOptions {
                kind: match cmd.kind {
                    KindArg::CoreEp => InverseKind::CoreEp,
                    KindArg::Core => InverseKind::Core,
                    KindArg::MoorePenrose => InverseKind::MoorePenrose,
                },
                show_decomposition: cmd.show_decomposition,
                precision: cmd.precision as usize,
                associated: cmd.associated,
                tol: cmd.tol.policy()?,
            };
            cmd_inverse(&cmd.input, &opts, &mut stdout)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            // one-line diagnostic; clap's usage hint is dropped
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            eprintln!("coreep: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("coreep: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
