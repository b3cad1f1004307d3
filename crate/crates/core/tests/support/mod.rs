//! Random test-matrix generators and exact-arithmetic oracles shared by the
//! integration suites.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut impl Rng, rows: usize, cols: usize, lo: f64, hi: f64) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.random_range(lo..hi))
}

/// Random orthogonal matrix (QR of a uniform matrix, column signs fixed).
pub fn orthogonal(rng: &mut impl Rng, n: usize) -> DMatrix<f64> {
    loop {
        let m = uniform(rng, n, n, -1.0, 1.0);
        let qr = m.qr();
        let r = qr.r();
        if (0..n).any(|i| r[(i, i)].abs() < 1e-3) {
            continue;
        }
        let mut q = qr.q();
        for j in 0..n {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        return q;
    }
}

fn signed(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    let v = rng.random_range(lo..hi);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Square test matrix `Q [[T, S], [0, N]] Q^T` with known index.
pub struct Seeded {
    pub a: DMatrix<f64>,
    pub index: usize,
    pub rho: usize,
    pub complex_pair: bool,
}

/// Nilpotent `m x m` matrix of index exactly `k` (`1 <= k <= m`), built from
/// shift chains of length at most `k`, one of length `k`, orthogonally mixed.
fn nilpotent(rng: &mut impl Rng, m: usize, k: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(m, m);
    let mut start = 0;
    let mut first = true;
    while start < m {
        let len = if first { k } else { rng.random_range(1..=k.min(m - start)) };
        first = false;
        for i in start..start + len - 1 {
            j[(i, i + 1)] = signed(rng, 0.5, 1.5);
        }
        start += len;
    }
    let q = orthogonal(rng, m);
    &q * j * q.transpose()
}

/// Random square matrix of size `n` and index `k`, optionally with a complex
/// conjugate eigenvalue pair in its nonsingular part (needs `rho >= 2`).
pub fn seeded(rng: &mut impl Rng, n: usize, k: usize, want_complex: bool) -> Seeded {
    assert!(k <= n);
    // room for a 2x2 rotation block when asked for one
    let cap = if want_complex && n >= k + 2 { n - 2 } else { n };
    let m = if k == 0 { 0 } else { rng.random_range(k..=cap) };
    let rho = n - m;
    let mut t = DMatrix::zeros(rho, rho);
    let mut i = 0;
    let mut complex_pair = false;
    if want_complex && rho >= 2 {
        let re = signed(rng, 0.3, 1.5);
        let im = signed(rng, 0.5, 1.5);
        t[(0, 0)] = re;
        t[(1, 1)] = re;
        t[(0, 1)] = im;
        t[(1, 0)] = -im;
        i = 2;
        complex_pair = true;
    }
    for d in i..rho {
        t[(d, d)] = signed(rng, 0.5, 2.0);
    }
    for r in 0..rho {
        for c in (r + 1).max(i)..rho {
            t[(r, c)] = rng.random_range(-1.0..1.0);
        }
    }
    let mut seed = DMatrix::zeros(n, n);
    seed.view_mut((0, 0), (rho, rho)).copy_from(&t);
    if m > 0 {
        seed.view_mut((0, rho), (rho, m)).copy_from(&uniform(rng, rho, m, -1.0, 1.0));
        seed.view_mut((rho, rho), (m, m)).copy_from(&nilpotent(rng, m, k));
    }
    let q = orthogonal(rng, n);
    Seeded {
        a: &q * seed * q.transpose(),
        index: k,
        rho,
        complex_pair,
    }
}

/// `count` seeded matrices of sizes 1..=6 and indices 0..=3; every fourth
/// one has a complex pair.
pub fn seeded_suite(seed: u64, count: usize) -> Vec<Seeded> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            if i % 4 == 0 {
                let n = rng.random_range(2..=6usize);
                let k = rng.random_range(0..=3usize.min(n - 2));
                seeded(&mut rng, n, k, true)
            } else {
                let n = rng.random_range(1..=6usize);
                let k = rng.random_range(0..=3usize.min(n));
                seeded(&mut rng, n, k, false)
            }
        })
        .collect()
}

/// `|diff| <= tol * max(1, |reference|)` in the Frobenius norm.
pub fn close(x: &DMatrix<f64>, reference: &DMatrix<f64>, tol: f64) -> bool {
    (x - reference).norm() <= tol * reference.norm().max(1.0)
}

/// `rows x cols` matrix of rank `r` with singular values in `[0.2, 3]`.
pub fn with_rank(rng: &mut impl Rng, rows: usize, cols: usize, r: usize) -> DMatrix<f64> {
    let u = orthogonal(rng, rows);
    let v = orthogonal(rng, cols);
    let mut s = DMatrix::zeros(rows, cols);
    for i in 0..r {
        s[(i, i)] = rng.random_range(0.2..3.0);
    }
    u * s * v.transpose()
}

/// Integer matrix with entries in `[-range, range]`, about half of them zero.
pub fn integer(rng: &mut impl Rng, rows: usize, cols: usize, range: i64) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        if rng.random_bool(0.5) {
            0.0
        } else {
            rng.random_range(-range..=range) as f64
        }
    })
}

pub fn to_rational(m: &DMatrix<f64>) -> Vec<Vec<BigRational>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| {
                    let v = m[(i, j)];
                    assert_eq!(v.fract(), 0.0, "oracle needs integer entries");
                    BigRational::from_integer(BigInt::from(v as i64))
                })
                .collect()
        })
        .collect()
}

/// Exact rank by fraction-free Gaussian elimination over the rationals.
pub fn exact_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = &row[col] / &pivot_row[col];
                for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn exact_matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

/// Exact index and `S^k` of an integer square matrix.
pub fn exact_index_power(s: &[Vec<BigRational>]) -> (usize, Vec<Vec<BigRational>>) {
    let n = s.len();
    let mut power: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(BigInt::from((i == j) as i64)))
                .collect()
        })
        .collect();
    let mut prev = n;
    for k in 0..=n {
        let next = exact_matmul(&power, s);
        let r = exact_rank(&next);
        if r == prev {
            return (k, power);
        }
        prev = r;
        power = next;
    }
    unreachable!("index never exceeds n")
}

/// Exact membership `y in R(m)`.
pub fn exact_in_range(m: &[Vec<BigRational>], y: &[f64]) -> bool {
    let aug: Vec<Vec<BigRational>> = m
        .iter()
        .zip(y)
        .map(|(row, &v)| {
            assert_eq!(v.fract(), 0.0);
            let mut row = row.clone();
            row.push(BigRational::from_integer(BigInt::from(v as i64)));
            row
        })
        .collect();
    exact_rank(&aug) == exact_rank(m)
}

pub fn max_abs_rational(m: &[Vec<BigRational>]) -> BigRational {
    m.iter()
        .flatten()
        .map(|v| v.abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

/// `[[D, E], [E, D]]`.
pub fn block_matrix(d: &DMatrix<f64>, e: &DMatrix<f64>) -> DMatrix<f64> {
    let n = d.nrows();
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    s.view_mut((0, 0), (n, n)).copy_from(d);
    s.view_mut((n, n), (n, n)).copy_from(d);
    s.view_mut((0, n), (n, n)).copy_from(e);
    s.view_mut((n, 0), (n, n)).copy_from(e);
    s
}

/// Residuals of `X A^(k+1) = A^k`, `A X^2 = X`, `(A X)^T = A X`.
pub fn core_ep_defects(a: &DMatrix<f64>, x: &DMatrix<f64>, k: usize) -> [f64; 3] {
    let n = a.nrows();
    let mut ak = DMatrix::identity(n, n);
    for _ in 0..k {
        ak = &ak * a;
    }
    let ax = a * x;
    [
        (x * &ak * a - &ak).norm(),
        (a * x * x - x).norm(),
        (ax.transpose() - &ax).norm(),
    ]
}

/// Residuals of the four Penrose equations.
pub fn penrose_defects(a: &DMatrix<f64>, x: &DMatrix<f64>) -> [f64; 4] {
    let ax = a * x;
    let xa = x * a;
    [
        (&ax * a - a).norm(),
        (&xa * x - x).norm(),
        (ax.transpose() - &ax).norm(),
        (xa.transpose() - &xa).norm(),
    ]
}
