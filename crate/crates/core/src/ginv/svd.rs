//! One-sided Jacobi SVD.
//!
//! Accurate to high relative precision on the small dense matrices this crate
//! handles, including exactly rank-deficient ones.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// `A = u diag(s) v^T`, `u` is `m x r`, `v` is `n x r`, `r = min(m, n)`.
///
/// Columns of `u` belonging to zero singular values are zero. When `A` is
/// square, `v` is a full orthogonal matrix.
pub(crate) struct Svd {
    pub u: DMatrix<f64>,
    pub singular_values: DVector<f64>,
    pub v: DMatrix<f64>,
}

/// Orthogonalizes the columns of `work` (`m x n`, `m >= n`), returning the
/// accumulated rotations.
fn hestenes(work: &mut DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (m, n) = work.shape();
    let mut v = DMatrix::<f64>::identity(n, n);
    // columns this small are numerically zero and are left alone
    let negligible = (f64::EPSILON * work.norm()).powi(2);
    // a stricter orthogonality test can stall on rounding
    let orth_tol = f64::EPSILON * m as f64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = work.column(p).norm_squared();
                let beta = work.column(q).norm_squared();
                let gamma = work.column(p).dot(&work.column(q));
                if gamma == 0.0
                    || alpha.min(beta) <= negligible
                    || gamma.abs() <= orth_tol * (alpha * beta).sqrt()
                {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let a = work[(i, p)];
                    let b = work[(i, q)];
                    work[(i, p)] = c * a - s * b;
                    work[(i, q)] = s * a + c * b;
                }
                for i in 0..n {
                    let a = v[(i, p)];
                    let b = v[(i, q)];
                    v[(i, p)] = c * a - s * b;
                    v[(i, q)] = s * a + c * b;
                }
            }
        }
        if !rotated {
            return Ok(v);
        }
    }
    Err(Error::NumericalFailure(
        "Jacobi SVD did not converge".into(),
    ))
}

fn tall(a: &DMatrix<f64>) -> Result<Svd> {
    let mut work = a.clone();
    let v = hestenes(&mut work)?;
    let n = a.ncols();
    let mut s = DVector::zeros(n);
    for j in 0..n {
        let norm = work.column(j).norm();
        s[j] = norm;
        if norm > 0.0 {
            work.column_mut(j).scale_mut(1.0 / norm);
        }
    }
    Ok(Svd {
        u: work,
        singular_values: s,
        v,
    })
}

pub(crate) fn jacobi_svd(a: &DMatrix<f64>) -> Result<Svd> {
    if !a.iter().all(|x| x.is_finite()) {
        return Err(Error::NumericalFailure("SVD input has non-finite entries".into()));
    }
    if a.nrows() >= a.ncols() {
        tall(a)
    } else {
        let t = tall(&a.transpose())?;
        Ok(Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        })
    }
}
