//! Generalized-inverse engine.
//!
//! Every routine works in real `f64` arithmetic. Ranks are numerical ranks
//! under [`TolerancePolicy::rank_rel_tol`]; see [`rank`].
//!
//! The core-EP inverse of a square `A` with index `k` is available through
//! two independent routes:
//!
//! * [`core_ep_via_formula`] evaluates `A^k [(A^T)^k A^(k+1)]^+ (A^T)^k`
//!   with an SVD pseudoinverse. This is the production route.
//! * [`core_ep_via_decomposition`] builds the core-EP decomposition
//!   `A = U [[T, S], [0, N]] U^T` from a reordered Schur form and returns
//!   `U [[T^-1, 0], [0, 0]] U^T`.

mod decomposition;
mod schur;
mod svd;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matrix::{RealMatrix, TolerancePolicy};

pub use decomposition::{core_ep_decompose, core_ep_via_decomposition, CoreEpDecomposition};

pub(crate) use svd::jacobi_svd as svd;

/// Largest singular value.
pub(crate) fn norm2(m: &DMatrix<f64>) -> Result<f64> {
    if m.is_empty() {
        return Ok(0.0);
    }
    Ok(svd(m)?.singular_values.max())
}

/// Numerical rank with cutoff `rank_rel_tol * scale`.
///
/// `scale` is `|m|_2` for a plain matrix. For a computed product such as
/// `A^p` it is `|A|_2^p`, the size of the rounding error: scaling by the
/// product's own norm would count the noise of a nilpotent power as rank.
pub(crate) fn rank_scaled(m: &DMatrix<f64>, scale: f64, tol: &TolerancePolicy) -> Result<usize> {
    if m.is_empty() || scale == 0.0 {
        return Ok(0);
    }
    let cut = scale * tol.rank_rel_tol;
    Ok(svd(m)?.singular_values.iter().filter(|&&s| s > cut).count())
}

pub(crate) fn rank_of(m: &DMatrix<f64>, tol: &TolerancePolicy) -> Result<usize> {
    rank_scaled(m, norm2(m)?, tol)
}

/// Pseudoinverse discarding singular values at or below `rank_rel_tol * scale`.
pub(crate) fn pinv_scaled(m: &DMatrix<f64>, scale: f64, tol: &TolerancePolicy) -> Result<DMatrix<f64>> {
    let (rows, cols) = m.shape();
    let mut out = DMatrix::zeros(cols, rows);
    if m.is_empty() {
        return Ok(out);
    }
    let dec = svd(m)?;
    let cut = scale * tol.rank_rel_tol;
    for (i, &s) in dec.singular_values.iter().enumerate() {
        if s > cut && s > 0.0 {
            out += (dec.v.column(i) / s) * dec.u.column(i).transpose();
        }
    }
    Ok(out)
}

pub(crate) fn pinv_of(m: &DMatrix<f64>, tol: &TolerancePolicy) -> Result<DMatrix<f64>> {
    pinv_scaled(m, norm2(m)?, tol)
}

pub(crate) fn power_of(m: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let n = m.nrows();
    let mut result = DMatrix::identity(n, n);
    let mut base = m.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

pub(crate) fn index_of(m: &DMatrix<f64>, tol: &TolerancePolicy) -> Result<usize> {
    let n = m.nrows();
    let norm = norm2(m)?;
    let mut prev_rank = n;
    let mut power = m.clone();
    for k in 0..=n {
        let r = rank_scaled(&power, norm.powi(k as i32 + 1), tol)?;
        if r == prev_rank {
            return Ok(k);
        }
        prev_rank = r;
        power = &power * m;
    }
    Err(Error::NumericalFailure(format!(
        "rank of successive powers did not stabilise within {n} steps; tolerance is inconsistent"
    )))
}

pub(crate) fn core_ep_formula_of(m: &DMatrix<f64>, k: usize, tol: &TolerancePolicy) -> Result<DMatrix<f64>> {
    let ak = power_of(m, k);
    let ak_t = ak.transpose();
    let inner = &ak_t * &ak * m;
    let inner_pinv = pinv_scaled(&inner, norm2(m)?.powi(2 * k as i32 + 1), tol)?;
    Ok(&ak * inner_pinv * ak_t)
}

/// Numerical rank: the number of singular values `s_i > rank_rel_tol * s_max`.
pub fn rank(m: &RealMatrix, tol: &TolerancePolicy) -> Result<usize> {
    rank_of(m, tol)
}

/// Moore-Penrose inverse through the SVD, discarding singular values at or
/// below the rank cutoff.
pub fn moore_penrose(m: &RealMatrix, tol: &TolerancePolicy) -> Result<RealMatrix> {
    RealMatrix::from_computed(pinv_of(m, tol)?, "moore_penrose")
}

/// A `{1,3}`-inverse (`A X A = A`, `(A X)^T = A X`). The Moore-Penrose
/// inverse is returned; any `{1,3}`-inverse gives the same projector `A X`.
pub fn one_three_inverse(m: &RealMatrix, tol: &TolerancePolicy) -> Result<RealMatrix> {
    moore_penrose(m, tol)
}

/// `m^k` by repeated squaring, with `m^0 = I`.
pub fn matrix_power(m: &RealMatrix, k: usize) -> Result<RealMatrix> {
    m.require_square("matrix_power")?;
    RealMatrix::from_computed(power_of(m, k), "matrix_power")
}

/// Least `k >= 0` with `rank(m^(k+1)) = rank(m^k)`.
pub fn matrix_index(m: &RealMatrix, tol: &TolerancePolicy) -> Result<usize> {
    m.require_square("matrix_index")?;
    index_of(m, tol)
}

/// Core-EP inverse `A^k [(A^T)^k A^(k+1)]^+ (A^T)^k`, `k = ind(A)`.
pub fn core_ep_via_formula(m: &RealMatrix, tol: &TolerancePolicy) -> Result<RealMatrix> {
    m.require_square("core_ep_via_formula")?;
    let k = index_of(m, tol)?;
    RealMatrix::from_computed(core_ep_formula_of(m, k, tol)?, "core_ep_via_formula")
}

/// Core inverse, defined for index at most one. Computed as the core-EP
/// inverse, after which `A X A = A` is checked explicitly.
pub fn core_inverse(m: &RealMatrix, tol: &TolerancePolicy) -> Result<RealMatrix> {
    m.require_square("core_inverse")?;
    let k = index_of(m, tol)?;
    if k > 1 {
        return Err(Error::IndexTooLarge(k));
    }
    let x = core_ep_formula_of(m, k, tol)?;
    let a: &DMatrix<f64> = m;
    let defect = (a * &x * a - a).norm();
    if defect > tol.equality_tol * (1.0 + a.norm()) {
        return Err(Error::NumericalFailure(format!(
            "core inverse violates A X A = A by {defect:e}"
        )));
    }
    RealMatrix::from_computed(x, "core_inverse")
}

/// `y in R(m)` by least-squares residual, the rank of `m` cut at `rank_rel_tol * scale`.
pub(crate) fn in_range_scaled(m: &DMatrix<f64>, y: &DVector<f64>, scale: f64, tol: &TolerancePolicy) -> Result<bool> {
    let residual = (m * (pinv_scaled(m, scale, tol)? * y) - y).norm();
    Ok(residual <= tol.residual_tol * y.norm().max(1.0))
}

/// Whether `y` lies in the column space of `m`, judged by the least-squares
/// residual `min_z |m z - y|_2 <= residual_tol * max(1, |y|_2)`.
pub fn in_column_space(m: &RealMatrix, y: &[f64], tol: &TolerancePolicy) -> Result<bool> {
    if y.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against a matrix with {} rows",
            y.len(),
            m.rows()
        )));
    }
    in_range_scaled(m, &DVector::from_column_slice(y), norm2(m)?, tol)
}
