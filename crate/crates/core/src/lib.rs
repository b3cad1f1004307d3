//! Core-EP inverses and fuzzy linear systems.
//!
//! A fuzzy linear system `A x = y` with a crisp `n x n` matrix `A` and fuzzy
//! right-hand side is embedded into the crisp `2n x 2n` system `S X = Y`,
//! where `S = [[D, E], [E, D]]` carries the positive and negative parts of
//! `A`. The crate solves that system with the core-EP inverse of `S`,
//! returning exact solutions for consistent systems and generalized
//! solutions for inconsistent ones.
//!
//! * [`ginv`]: rank, Moore-Penrose, matrix index, core-EP (two routes),
//!   core inverse, `{1,3}`-inverse and column-space membership.
//! * [`fuzzy`]: affine parametric fuzzy numbers and their arithmetic.
//! * [`fls`]: the associated system, classification and the solver.

pub mod error;
pub mod fls;
pub mod fuzzy;
pub mod ginv;
pub mod matrix;

pub use error::{Error, Result};
pub use fls::{
    back_map, block_core_ep, block_core_ep_from_blocks, build_associated, classify, embed, raw_residual, solve,
    solve_with_grid, verify_solution, AssociatedSystem, Classification, FlsProblem, Method, SolveReport,
    SystemKind, DEFAULT_GRID,
};
pub use fuzzy::{AffineFn, FuzzyNumber, FuzzyVector, Validity, Violation};
pub use ginv::{
    core_ep_decompose, core_ep_via_decomposition, core_ep_via_formula, core_inverse,
    in_column_space, matrix_index, matrix_power, moore_penrose, one_three_inverse, rank,
    CoreEpDecomposition,
};
pub use matrix::{RealMatrix, TolerancePolicy};
