//! Core-EP decomposition `A = U [[T, S], [0, N]] U^T` and the core-EP
//! inverse `U [[T^-1, 0], [0, 0]] U^T` derived from it.
//!
//! The split into the nonsingular part `T` and the nilpotent part `N` comes
//! from a complex Schur form whose diagonal is reordered so the `rho`
//! eigenvalues of largest modulus lead, `rho = rank(A^k)`. The leading Schur
//! vectors span `R(A^k)`, a real subspace, so its orthogonal projector is real
//! and yields a real orthonormal basis. Each diagonal block is then brought to
//! (quasi-)triangular form by a real orthogonal change of basis.

use nalgebra::{DMatrix, Schur};

use super::schur::{complex_schur, reorder};
use super::{index_of, norm2, power_of, rank_scaled, svd};
use crate::error::{Error, Result};
use crate::matrix::{RealMatrix, TolerancePolicy};

/// Factors of `A = U [[T, S], [0, N]] U^T`.
///
/// `t` is `rho x rho` and nonsingular, in real Schur form (upper triangular
/// with 2x2 bumps for complex conjugate eigenvalue pairs). `n_block` is
/// nilpotent with `N^k = 0` and strictly upper triangular up to rounding.
/// Either block may be `0 x 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreEpDecomposition {
    pub u: DMatrix<f64>,
    pub t: DMatrix<f64>,
    pub s_block: DMatrix<f64>,
    pub n_block: DMatrix<f64>,
    /// Index of the decomposed matrix.
    pub k: usize,
}

impl CoreEpDecomposition {
    /// Dimension of the nonsingular block, `rank(A^k)`.
    pub fn rho(&self) -> usize {
        self.t.nrows()
    }

    /// `U [[T, S], [0, N]] U^T`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let n = self.u.nrows();
        let rho = self.rho();
        let mut inner = DMatrix::zeros(n, n);
        inner.view_mut((0, 0), (rho, rho)).copy_from(&self.t);
        inner.view_mut((0, rho), (rho, n - rho)).copy_from(&self.s_block);
        inner.view_mut((rho, rho), (n - rho, n - rho)).copy_from(&self.n_block);
        &self.u * inner * self.u.transpose()
    }

    /// `U [[T^-1, 0], [0, 0]] U^T`.
    pub fn core_ep_inverse(&self) -> Result<DMatrix<f64>> {
        let n = self.u.nrows();
        let rho = self.rho();
        if rho == 0 {
            return Ok(DMatrix::zeros(n, n));
        }
        let t_inv = self
            .t
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::NumericalFailure("T block is singular".into()))?;
        let u1 = self.u.columns(0, rho);
        Ok(u1 * t_inv * u1.transpose())
    }
}

/// Orthogonal `W` with `W^T N W` strictly upper triangular, for nilpotent
/// `N`: repeatedly splits off a unit kernel vector of the compressed block.
fn triangularize_nilpotent(nil: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let m = nil.nrows();
    let mut w = DMatrix::<f64>::identity(m, m);
    let mut block = nil.clone();
    for step in 0..m.saturating_sub(1) {
        let size = m - step;
        let dec = svd(&block)?;
        let (imin, _) = dec
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty block");
        let mut v = dec.v.column(imin).into_owned();
        if v[0] > 0.0 {
            v = -v;
        }
        // Householder reflector H = I - 2 h h^T / h^T h with H e1 = v.
        let mut h = v.clone();
        h[0] -= 1.0;
        let hh = h.dot(&h);
        let reflector = if hh == 0.0 {
            DMatrix::identity(size, size)
        } else {
            DMatrix::identity(size, size) - (&h * h.transpose()) * (2.0 / hh)
        };
        let tail = w.columns(step, size) * &reflector;
        w.columns_mut(step, size).copy_from(&tail);
        let rotated = reflector.transpose() * &block * &reflector;
        block = rotated.view((1, 1), (size - 1, size - 1)).into_owned();
    }
    Ok(w)
}

fn real_schur(block: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if block.is_empty() {
        return Ok((block.clone(), block.clone()));
    }
    let (w, t) = Schur::try_new(block.clone(), f64::EPSILON, 10_000)
        .map(Schur::unpack)
        .ok_or_else(|| Error::NumericalFailure("real Schur form of T did not converge".into()))?;
    let n = block.nrows();
    let defect = (&w * &t * w.transpose() - block).norm() + (w.transpose() * &w - DMatrix::identity(n, n)).norm();
    if defect > 1e-12 * (1.0 + block.norm()) {
        return Err(Error::NumericalFailure(format!("real Schur form of T is inaccurate ({defect:e})")));
    }
    Ok((w, t))
}

/// Flips column signs so the largest-magnitude entry of each column is positive.
fn normalize_signs(u: &mut DMatrix<f64>) {
    for mut col in u.column_iter_mut() {
        let pivot = col.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() + 1e-12 { x } else { acc });
        if pivot < 0.0 {
            col.neg_mut();
        }
    }
}

/// Computes the core-EP decomposition of a square matrix.
///
/// Eigenvalues are split into the `rho = rank(A^k)` of largest modulus and
/// the rest. The split is rejected as a numerical failure unless every kept
/// eigenvalue exceeds `rank_rel_tol^(1/k) * |A|_2` and every discarded one
/// does not; perturbed nilpotent blocks of order `k` scatter their zero
/// eigenvalues to roughly `eps^(1/k)`, hence the root.
pub fn core_ep_decompose(m: &RealMatrix, tol: &TolerancePolicy) -> Result<CoreEpDecomposition> {
    let n = m.require_square("core_ep_decompose")?;
    let a: &DMatrix<f64> = m;
    let k = index_of(a, tol)?;
    let norm = norm2(a)?;
    let rho = rank_scaled(&power_of(a, k), norm.powi(k as i32), tol)?;

    let mut schur = complex_schur(a)?;
    let moduli: Vec<f64> = (0..n).map(|i| schur.t[(i, i)].norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| moduli[j].total_cmp(&moduli[i]));
    let mut select = vec![false; n];
    for &i in order.iter().take(rho) {
        select[i] = true;
    }

    let threshold = tol.rank_rel_tol.powf(1.0 / k.max(1) as f64) * norm;
    let smallest_kept = order.iter().take(rho).map(|&i| moduli[i]).fold(f64::INFINITY, f64::min);
    let largest_dropped = order.iter().skip(rho).map(|&i| moduli[i]).fold(0.0, f64::max);
    if (rho > 0 && smallest_kept <= threshold) || largest_dropped > threshold {
        return Err(Error::NumericalFailure(format!(
            "cannot separate {rho} nonzero eigenvalues from zero: smallest kept |lambda| = {smallest_kept:e}, \
             largest dropped |lambda| = {largest_dropped:e}, threshold = {threshold:e}"
        )));
    }
    reorder(&mut schur, &select);

    // Real orthonormal basis of R(A^k) from the (real) projector Q1 Q1^H.
    let q1 = schur.q.columns(0, rho);
    let projector = (q1 * q1.adjoint()).map(|z| z.re);
    let projector = (&projector + projector.transpose()) * 0.5;
    // symmetric PSD: right singular vectors are eigenvectors
    let eig = svd(&projector)?;
    let mut eorder: Vec<usize> = (0..n).collect();
    eorder.sort_by(|&i, &j| eig.singular_values[j].total_cmp(&eig.singular_values[i]));
    if eorder
        .iter()
        .enumerate()
        .any(|(pos, &i)| (eig.singular_values[i] > 0.5) != (pos < rho))
    {
        return Err(Error::NumericalFailure(
            "leading Schur vectors do not span a real invariant subspace".into(),
        ));
    }
    let mut basis = DMatrix::zeros(n, n);
    for (pos, &i) in eorder.iter().enumerate() {
        basis.set_column(pos, &eig.v.column(i));
    }

    let blocks = basis.transpose() * a * &basis;
    let t_raw = blocks.view((0, 0), (rho, rho)).into_owned();
    let n_raw = blocks.view((rho, rho), (n - rho, n - rho)).into_owned();
    let (w_t, _) = real_schur(&t_raw)?;
    let w_n = triangularize_nilpotent(&n_raw)?;

    let mut u = DMatrix::zeros(n, n);
    u.columns_mut(0, rho).copy_from(&(basis.columns(0, rho) * &w_t));
    u.columns_mut(rho, n - rho).copy_from(&(basis.columns(rho, n - rho) * &w_n));
    normalize_signs(&mut u);

    let full = u.transpose() * a * &u;
    Ok(CoreEpDecomposition {
        t: full.view((0, 0), (rho, rho)).into_owned(),
        s_block: full.view((0, rho), (rho, n - rho)).into_owned(),
        n_block: full.view((rho, rho), (n - rho, n - rho)).into_owned(),
        u,
        k,
    })
}

/// Core-EP inverse `U [[T^-1, 0], [0, 0]] U^T` from [`core_ep_decompose`].
pub fn core_ep_via_decomposition(m: &RealMatrix, tol: &TolerancePolicy) -> Result<RealMatrix> {
    let dec = core_ep_decompose(m, tol)?;
    RealMatrix::from_computed(dec.core_ep_inverse()?, "core_ep_via_decomposition")
}
