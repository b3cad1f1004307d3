//! Dense real matrices and the tolerance policy shared by every routine.

use std::ops::Deref;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-empty dense real matrix with finite entries.
///
/// Thin validated wrapper around [`DMatrix<f64>`]; it dereferences to the
/// underlying nalgebra matrix for read access.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix(DMatrix<f64>);

impl RealMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::InvalidMatrix(format!(
                "matrix must be at least 1x1, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if let Some(pos) = m.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "non-finite entry at column-major offset {pos}"
            )));
        }
        Ok(Self(m))
    }

    /// Builds a matrix from entries in row-major order.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(rows, cols, entries))
    }

    /// Builds a matrix from a list of rows; ragged input is rejected.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.as_ref().len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {ncols}",
                r.as_ref().len()
            )));
        }
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::from_row_slice(nrows, ncols, &flat)
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n.max(1), n.max(1)))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows.max(1), cols.max(1)))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.0.nrows() == self.0.ncols()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<f64> {
        self.0
    }

    /// Entries as a list of rows.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows())
            .map(|i| self.0.row(i).iter().copied().collect())
            .collect()
    }

    pub(crate) fn require_square(&self, what: &str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{what} requires a square matrix, got {}x{}",
                self.rows(),
                self.cols()
            )))
        }
    }

    /// Wraps the result of an internal computation, turning NaN/inf into a
    /// numerical failure instead of an invalid-input error.
    pub(crate) fn from_computed(m: DMatrix<f64>, what: &str) -> Result<Self> {
        if m.iter().all(|x| x.is_finite()) {
            Self::new(m)
        } else {
            Err(Error::NumericalFailure(format!("{what} produced non-finite entries")))
        }
    }
}

impl Deref for RealMatrix {
    type Target = DMatrix<f64>;

    fn deref(&self) -> &DMatrix<f64> {
        &self.0
    }
}

impl TryFrom<DMatrix<f64>> for RealMatrix {
    type Error = Error;

    fn try_from(m: DMatrix<f64>) -> Result<Self> {
        Self::new(m)
    }
}

impl Serialize for RealMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RealMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(deserializer)?;
        Self::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Numerical cutoffs used in place of exact arithmetic.
///
/// * `rank_rel_tol`: a singular value counts towards the rank when it
///   exceeds `rank_rel_tol * sigma_max`. For a power `A^p` formed
///   internally the reference is `|A|_2^p` instead.
/// * `residual_tol`: bound on least-squares residuals, scaled by
///   `max(1, |y|)`, for membership and consistency checks.
/// * `equality_tol`: matrix-equality comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub rank_rel_tol: f64,
    pub residual_tol: f64,
    pub equality_tol: f64,
}

impl TolerancePolicy {
    pub const DEFAULT_RANK_REL_TOL: f64 = 1e-10;
    pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;
    pub const DEFAULT_EQUALITY_TOL: f64 = 1e-8;

    pub fn new(rank_rel_tol: f64, residual_tol: f64, equality_tol: f64) -> Result<Self> {
        let policy = Self {
            rank_rel_tol,
            residual_tol,
            equality_tol,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_rel_tol", self.rank_rel_tol),
            ("residual_tol", self.residual_tol),
            ("equality_tol", self.equality_tol),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(())
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rank_rel_tol: Self::DEFAULT_RANK_REL_TOL,
            residual_tol: Self::DEFAULT_RESIDUAL_TOL,
            equality_tol: Self::DEFAULT_EQUALITY_TOL,
        }
    }
}
