//! File formats, text rendering and command drivers behind the `coreep`
//! binary.
//!
//! Exit codes: `0` success, `1` the report could not be written, `2`
//! unreadable or malformed input, `3` dimension mismatch, `4` numerical
//! failure.

mod commands;
mod error;
pub mod files;
pub mod render;

pub use commands::{cmd_inverse, cmd_solve, solve_file, Format, InverseKind, InverseOptions, SolveOptions};
pub use error::CliError;
pub use files::{CrispSolution, FuzzyRecord, Overall, ProblemFile, ReportFile};
