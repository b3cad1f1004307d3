use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use coreep::{
    build_associated, core_ep_decompose, core_ep_via_formula, core_inverse, moore_penrose, solve_with_grid, Method,
    RealMatrix, TolerancePolicy,
};

use crate::error::CliError;
use crate::files::{parse_matrix, ProblemFile, ReportFile};
use crate::render::{render_decomposition, render_matrix, render_report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// `None` lets the solver choose.
    pub method: Option<Method>,
    pub tol: TolerancePolicy,
    pub format: Format,
    pub grid: usize,
    /// Write the report here instead of to the output stream.
    pub output: Option<PathBuf>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            method: None,
            tol: TolerancePolicy::default(),
            format: Format::Text,
            grid: coreep::DEFAULT_GRID,
            output: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseKind {
    CoreEp,
    Core,
    MoorePenrose,
}

impl InverseKind {
    fn label(self) -> &'static str {
        match self {
            InverseKind::CoreEp => "core-EP inverse",
            InverseKind::Core => "core inverse",
            InverseKind::MoorePenrose => "Moore-Penrose inverse",
        }
    }
}

#[derive(Debug, Clone)]
pub struct InverseOptions {
    pub kind: InverseKind,
    pub show_decomposition: bool,
    /// Significant digits per printed entry.
    pub precision: usize,
    /// Read a problem file and invert its associated matrix.
    pub associated: bool,
    pub tol: TolerancePolicy,
}

impl Default for InverseOptions {
    fn default() -> Self {
        Self {
            kind: InverseKind::CoreEp,
            show_decomposition: false,
            precision: 6,
            associated: false,
            tol: TolerancePolicy::default(),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Output(e.to_string()))
}

/// Parses and solves a problem file.
pub fn solve_file(input: &Path, opts: &SolveOptions) -> Result<ReportFile, CliError> {
    opts.tol.validate()?;
    let problem = ProblemFile::parse(&read_input(input)?)?.to_problem()?;
    let report = solve_with_grid(&problem, &opts.tol, opts.method, opts.grid)?;
    Ok(ReportFile::new(&report, &opts.tol))
}

/// Solves `input` and writes the report to `opts.output`, or to `out`.
pub fn cmd_solve(input: &Path, opts: &SolveOptions, out: &mut dyn Write) -> Result<(), CliError> {
    let report = solve_file(input, opts)?;
    let text = match opts.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => render_report(&report),
    };
    match &opts.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Output(format!("cannot write {}: {e}", path.display()))),
        None => emit(out, &text),
    }
}

fn load_matrix(input: &Path, associated: bool) -> Result<RealMatrix, CliError> {
    let text = read_input(input)?;
    if associated {
        let problem = ProblemFile::parse(&text)?.to_problem()?;
        return Ok(build_associated(&problem).s);
    }
    parse_matrix(&text).map_err(|e| match e {
        CliError::Parse(msg) if ProblemFile::parse(&text).is_ok() => {
            CliError::Parse(format!("{msg} (this is a problem file; pass --associated to use its S)"))
        }
        other => other,
    })
}

/// Prints the requested inverse of a matrix file and optionally the
/// core-EP decomposition. Entries within `rank_rel_tol` of zero, relative to
/// the largest entry, print as `0`.
pub fn cmd_inverse(input: &Path, opts: &InverseOptions, out: &mut dyn Write) -> Result<(), CliError> {
    opts.tol.validate()?;
    let m = load_matrix(input, opts.associated)?;
    let inverse = match opts.kind {
        InverseKind::CoreEp => core_ep_via_formula(&m, &opts.tol)?,
        InverseKind::Core => core_inverse(&m, &opts.tol)?,
        InverseKind::MoorePenrose => moore_penrose(&m, &opts.tol)?,
    };
    let noise = |x: &nalgebra::DMatrix<f64>| x.amax() * opts.tol.rank_rel_tol;
    let mut text = format!("{} ({}x{})\n", opts.kind.label(), inverse.rows(), inverse.cols());
    text.push_str(&render_matrix(&inverse, opts.precision, noise(&inverse)));
    if opts.show_decomposition {
        let dec = core_ep_decompose(&m, &opts.tol)?;
        text.push('\n');
        text.push_str(&render_decomposition(&dec, opts.precision, noise(&m)));
    }
    emit(out, &text)
}
