//! Complex Schur form `A = Q T Q^H` of a real matrix, with reordering of the
//! diagonal by adjacent Givens swaps.

use nalgebra::{DMatrix, Hessenberg};
use num_complex::Complex64;

use crate::error::{Error, Result};

type CMatrix = DMatrix<Complex64>;

pub(crate) struct ComplexSchur {
    pub q: CMatrix,
    pub t: CMatrix,
}

/// Rotation `G = [[c, s], [-conj(s), c]]` with real `c` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let nrm = ax.hypot(ay);
    let phase = x / ax;
    (ax / nrm, phase * y.conj() / nrm)
}

/// Rows `i`, `i + 1` of `m` <- `G` applied from the left, columns `cols`.
fn rotate_rows(m: &mut CMatrix, i: usize, c: f64, s: Complex64, cols: std::ops::Range<usize>) {
    for j in cols {
        let a = m[(i, j)];
        let b = m[(i + 1, j)];
        m[(i, j)] = a * c + s * b;
        m[(i + 1, j)] = b * c - s.conj() * a;
    }
}

/// Columns `i`, `i + 1` of `m` <- `m G^H`, rows `rows`.
fn rotate_cols(m: &mut CMatrix, i: usize, c: f64, s: Complex64, rows: std::ops::Range<usize>) {
    for r in rows {
        let a = m[(r, i)];
        let b = m[(r, i + 1)];
        m[(r, i)] = a * c + b * s.conj();
        m[(r, i + 1)] = b * c - a * s;
    }
}

fn wilkinson_shift(t: &CMatrix, hi: usize) -> Complex64 {
    let a = t[(hi - 1, hi - 1)];
    let b = t[(hi - 1, hi)];
    let c = t[(hi, hi - 1)];
    let d = t[(hi, hi)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let mu1 = mid + disc;
    let mu2 = mid - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

pub(crate) fn complex_schur(a: &DMatrix<f64>) -> Result<ComplexSchur> {
    let n = a.nrows();
    let hess = Hessenberg::new(a.clone());
    let (q_real, h_real) = hess.unpack();
    let mut q = q_real.map(|x| Complex64::new(x, 0.0));
    let mut t = h_real.map(|x| Complex64::new(x, 0.0));
    for j in 0..n {
        for i in (j + 2)..n {
            t[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    if n <= 1 {
        return Ok(ComplexSchur { q, t });
    }

    let scale = a.norm().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let max_iter = 60 * n;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;

    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let diag = t[(lo - 1, lo - 1)].norm() + t[(lo, lo)].norm();
            if sub <= eps * diag || sub <= eps * scale {
                t[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > max_iter * n {
            return Err(Error::NumericalFailure(
                "complex Schur iteration did not converge".into(),
            ));
        }

        let mu = if iter.is_multiple_of(11) {
            // exceptional shift to break cycles
            t[(hi, hi)] + Complex64::new(t[(hi, hi - 1)].norm() * 0.75, 0.0)
        } else {
            wilkinson_shift(&t, hi)
        };

        // implicit single-shift QR sweep on the active block lo..=hi
        let mut x = t[(lo, lo)] - mu;
        let mut y = t[(lo + 1, lo)];
        for j in lo..hi {
            let (c, s) = givens(x, y);
            let first_col = if j == lo { lo } else { j - 1 };
            rotate_rows(&mut t, j, c, s, first_col..n);
            let last_row = (j + 2).min(hi);
            rotate_cols(&mut t, j, c, s, 0..last_row + 1);
            rotate_cols(&mut q, j, c, s, 0..n);
            if j > lo {
                t[(j + 1, j - 1)] = Complex64::new(0.0, 0.0);
            }
            if j + 1 < hi {
                x = t[(j + 1, j)];
                y = t[(j + 2, j)];
            }
        }
    }
    Ok(ComplexSchur { q, t })
}

/// Swaps the adjacent diagonal entries `i` and `i + 1` of the triangular
/// factor, keeping `A = Q T Q^H`.
fn swap_adjacent(s: &mut ComplexSchur, i: usize) {
    let n = s.t.nrows();
    let t11 = s.t[(i, i)];
    let t22 = s.t[(i + 1, i + 1)];
    if t11 == t22 {
        return;
    }
    let (c, sn) = givens(s.t[(i, i + 1)], t22 - t11);
    rotate_rows(&mut s.t, i, c, sn, i..n);
    rotate_cols(&mut s.t, i, c, sn, 0..i + 2);
    rotate_cols(&mut s.q, i, c, sn, 0..n);
    s.t[(i + 1, i)] = Complex64::new(0.0, 0.0);
    s.t[(i, i)] = t22;
    s.t[(i + 1, i + 1)] = t11;
}

/// Moves the diagonal entries flagged in `select` to the leading block,
/// preserving their relative order.
pub(crate) fn reorder(s: &mut ComplexSchur, select: &[bool]) {
    let mut flags = select.to_vec();
    let mut ks = 0;
    for i in 0..flags.len() {
        if flags[i] {
            for j in (ks..i).rev() {
                swap_adjacent(s, j);
                flags.swap(j, j + 1);
            }
            ks += 1;
        }
    }
}
