//! Fuzzy linear systems `A x = y` through the crisp embedding `S X = Y`.
//!
//! With `D = max(A, 0)` and `E = max(-A, 0)` entrywise, the associated
//! matrix is `S = [[D, E], [E, D]]` and the crisp unknown / right-hand side
//! stack the lower endpoints on top of the negated upper endpoints:
//! `X(r) = (lower(x), -upper(x))`, `Y(r) = (lower(y), -upper(y))`. Every
//! vector here is affine in `r` and kept as a pair `(v0, v1)` meaning
//! `v0 + r v1`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{uniform_grid, AffineFn, FuzzyNumber, FuzzyVector, Validity};
use crate::ginv::{core_ep_formula_of, in_range_scaled, index_of, norm2, pinv_scaled, power_of, rank_of};
use crate::matrix::{RealMatrix, TolerancePolicy};

pub const DEFAULT_GRID: usize = 11;

/// `A x = y` with crisp square `A` and fuzzy right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct FlsProblem {
    a: RealMatrix,
    y: FuzzyVector,
}

impl FlsProblem {
    pub fn new(a: RealMatrix, y: FuzzyVector) -> Result<Self> {
        a.require_square("a fuzzy linear system")?;
        if y.len() != a.rows() {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} entries, matrix has {} rows",
                y.len(),
                a.rows()
            )));
        }
        if let Some(i) = y.iter().position(|z| !(z.lower.is_finite() && z.upper.is_finite())) {
            return Err(Error::InvalidMatrix(format!("right-hand side entry {i} is not finite")));
        }
        Ok(Self { a, y })
    }

    pub fn a(&self) -> &RealMatrix {
        &self.a
    }

    pub fn y(&self) -> &FuzzyVector {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }
}

/// The crisp system `S X(r) = y0 + r y1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociatedSystem {
    pub s: RealMatrix,
    pub d: RealMatrix,
    pub e: RealMatrix,
    pub y0: Vec<f64>,
    pub y1: Vec<f64>,
}

impl AssociatedSystem {
    /// Size `n` of the original fuzzy system (`S` is `2n x 2n`).
    pub fn n(&self) -> usize {
        self.d.rows()
    }

    pub fn rhs_at(&self, r: f64) -> Vec<f64> {
        self.y0.iter().zip(&self.y1).map(|(a, b)| a + r * b).collect()
    }

    fn y0_vec(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.y0)
    }

    fn y1_vec(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.y1)
    }
}

/// `[[D, E], [E, D]]`.
fn assemble_blocks(d: &DMatrix<f64>, e: &DMatrix<f64>) -> DMatrix<f64> {
    let n = d.nrows();
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    s.view_mut((0, 0), (n, n)).copy_from(d);
    s.view_mut((n, n), (n, n)).copy_from(d);
    s.view_mut((0, n), (n, n)).copy_from(e);
    s.view_mut((n, 0), (n, n)).copy_from(e);
    s
}

/// Stacks a fuzzy vector as the affine crisp vector `(lower, -upper)`.
pub fn embed(v: &FuzzyVector) -> (Vec<f64>, Vec<f64>) {
    let n = v.len();
    let mut v0 = vec![0.0; 2 * n];
    let mut v1 = vec![0.0; 2 * n];
    for (i, z) in v.iter().enumerate() {
        v0[i] = z.lower.c0;
        v1[i] = z.lower.c1;
        v0[n + i] = -z.upper.c0;
        v1[n + i] = -z.upper.c1;
    }
    (v0, v1)
}

/// Inverse of [`embed`]: component `i` is `(x0[i] + r x1[i], -(x0[n+i] + r x1[n+i]))`.
pub fn back_map(x0: &[f64], x1: &[f64]) -> FuzzyVector {
    let n = x0.len() / 2;
    let items = (0..n)
        .map(|i| {
            FuzzyNumber::new(
                AffineFn::new(x0[i], x1[i]),
                -AffineFn::new(x0[n + i], x1[n + i]),
            )
        })
        .collect();
    FuzzyVector::new(items).expect("solution of a non-empty system")
}

pub fn build_associated(p: &FlsProblem) -> AssociatedSystem {
    let a: &DMatrix<f64> = p.a();
    let d = a.map(|v| v.max(0.0));
    let e = a.map(|v| (-v).max(0.0));
    let s = assemble_blocks(&d, &e);
    let (y0, y1) = embed(p.y());
    AssociatedSystem {
        s: RealMatrix::new(s).expect("finite input"),
        d: RealMatrix::new(d).expect("finite input"),
        e: RealMatrix::new(e).expect("finite input"),
        y0,
        y1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SystemKind {
    ConsistentUnique,
    ConsistentInfinite,
    Inconsistent,
}

impl SystemKind {
    pub fn is_consistent(self) -> bool {
        !matches!(self, SystemKind::Inconsistent)
    }
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: SystemKind,
    pub rank_s: usize,
    pub rank_aug: usize,
    pub index_s: usize,
}

/// Rank-based classification of `S X(r) = Y(r)`.
///
/// `rank_aug` is the rank of `[S | y0 | y1]`: an affine solution exists for
/// every `r` exactly when both `y0` and `y1` lie in `R(S)`.
pub fn classify(sys: &AssociatedSystem, tol: &TolerancePolicy) -> Result<Classification> {
    let s: &DMatrix<f64> = &sys.s;
    let dim = s.nrows();
    let rank_s = rank_of(s, tol)?;
    let mut aug = s.clone().insert_columns(dim, 2, 0.0);
    aug.set_column(dim, &sys.y0_vec());
    aug.set_column(dim + 1, &sys.y1_vec());
    let rank_aug = rank_of(&aug, tol)?;
    let index_s = index_of(s, tol)?;
    let kind = if rank_s < rank_aug {
        SystemKind::Inconsistent
    } else if rank_s == dim {
        SystemKind::ConsistentUnique
    } else {
        SystemKind::ConsistentInfinite
    };
    Ok(Classification {
        kind,
        rank_s,
        rank_aug,
        index_s,
    })
}

/// Core-EP inverse of `[[D, E], [E, D]]` from the two `n x n` core-EP
/// inverses `P = (D + E)^ce`, `Q = (D - E)^ce`: the result is `[[H, Z], [Z, H]]`
/// with `H = (P + Q) / 2`, `Z = (P - Q) / 2`.
pub fn block_core_ep_from_blocks(d: &RealMatrix, e: &RealMatrix, tol: &TolerancePolicy) -> Result<RealMatrix> {
    let n = d.require_square("block_core_ep")?;
    if e.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "D is {n}x{n} but E is {}x{}",
            e.rows(),
            e.cols()
        )));
    }
    let sum: DMatrix<f64> = d.as_dmatrix() + e.as_dmatrix();
    let diff: DMatrix<f64> = d.as_dmatrix() - e.as_dmatrix();
    let p = core_ep_formula_of(&sum, index_of(&sum, tol)?, tol)?;
    let q = core_ep_formula_of(&diff, index_of(&diff, tol)?, tol)?;
    let h = (&p + &q) * 0.5;
    let z = (&p - &q) * 0.5;
    RealMatrix::from_computed(assemble_blocks(&h, &z), "block_core_ep")
}

/// `S^ce` of the associated matrix via its block structure; only `|A|` and
/// `A` are inverted.
pub fn block_core_ep(sys: &AssociatedSystem, tol: &TolerancePolicy) -> Result<RealMatrix> {
    block_core_ep_from_blocks(&sys.d, &sys.e, tol)
}

/// How the crisp solution was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// `X = S^-1 Y`, nonsingular `S`.
    #[serde(rename = "inverse")]
    Inverse,
    /// `X = S^ce Y` with `Y in R(S^k)`: an exact solution.
    #[serde(rename = "core-ep")]
    CoreEp,
    /// Generalized solution checked against `S X = S^k (S^k)^(1,3) Y`.
    #[serde(rename = "method2-i")]
    Method2I,
    /// Generalized solution checked against `(S^k)^T S X = (S^k)^T Y`.
    #[serde(rename = "method2-ii")]
    Method2II,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Inverse => "inverse",
            Method::CoreEp => "core-ep",
            Method::Method2I => "method2-i",
            Method::Method2II => "method2-ii",
        }
    }

    pub fn is_generalized(self) -> bool {
        matches!(self, Method::Method2I | Method::Method2II)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "inverse" => Ok(Method::Inverse),
            "core-ep" => Ok(Method::CoreEp),
            "method2-i" => Ok(Method::Method2I),
            "method2-ii" => Ok(Method::Method2II),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub classification: Classification,
    pub method: Method,
    /// Crisp solution `X(r) = crisp_x0 + r crisp_x1`.
    pub crisp_x0: Vec<f64>,
    pub crisp_x1: Vec<f64>,
    pub fuzzy_x: FuzzyVector,
    pub verdicts: Vec<Validity>,
    /// Max over the r-grid of the infinity-norm residual of the system the
    /// method solves (the original one, or the auxiliary one for method 2).
    pub residual: f64,
    pub is_generalized: bool,
    pub grid: usize,
}

impl SolveReport {
    /// Every fuzzy component satisfies the fuzzy-number requirements.
    pub fn is_strong(&self) -> bool {
        self.verdicts.iter().all(Validity::is_valid)
    }
}

/// Affine pair `(v0, v1)` of a crisp vector.
type Affine = (DVector<f64>, DVector<f64>);

fn max_grid_residual(lhs: &Affine, rhs: &Affine, grid: usize) -> f64 {
    uniform_grid(grid)
        .map(|r| (&lhs.0 + &lhs.1 * r - &rhs.0 - &rhs.1 * r).amax())
        .fold(0.0, f64::max)
}

fn max_grid_norm(v: &Affine, grid: usize) -> f64 {
    uniform_grid(grid).map(|r| (&v.0 + &v.1 * r).amax()).fold(0.0, f64::max)
}

/// Left- and right-hand sides of the system that `method` solves, applied to `X`.
fn method_system(
    sys: &AssociatedSystem,
    x: &Affine,
    method: Method,
    tol: &TolerancePolicy,
) -> Result<(Affine, Affine)> {
    let s: &DMatrix<f64> = &sys.s;
    let y = (sys.y0_vec(), sys.y1_vec());
    let sx = (s * &x.0, s * &x.1);
    match method {
        Method::Inverse | Method::CoreEp => Ok((sx, y)),
        Method::Method2I => {
            let k = index_of(s, tol)?;
            let sk = power_of(s, k);
            let proj = &sk * pinv_scaled(&sk, norm2(s)?.powi(k as i32), tol)?;
            Ok((sx, (&proj * &y.0, &proj * &y.1)))
        }
        Method::Method2II => {
            let sk_t = power_of(s, index_of(s, tol)?).transpose();
            Ok(((&sk_t * &sx.0, &sk_t * &sx.1), (&sk_t * &y.0, &sk_t * &y.1)))
        }
    }
}

/// `max_r |S X(r) - Y(r)|_inf` over `grid` uniform points, against the
/// original right-hand side.
pub fn raw_residual(sys: &AssociatedSystem, x0: &[f64], x1: &[f64], grid: usize) -> f64 {
    let s: &DMatrix<f64> = &sys.s;
    let x = (DVector::from_column_slice(x0), DVector::from_column_slice(x1));
    max_grid_residual(&(s * &x.0, s * &x.1), &(sys.y0_vec(), sys.y1_vec()), grid)
}

/// Substitution check of a report: the raw residual for exact solutions,
/// the `S X = S^k (S^k)^(1,3) Y` residual for generalized ones.
pub fn verify_solution(
    sys: &AssociatedSystem,
    report: &SolveReport,
    grid: usize,
    tol: &TolerancePolicy,
) -> Result<f64> {
    if !report.is_generalized {
        return Ok(raw_residual(sys, &report.crisp_x0, &report.crisp_x1, grid));
    }
    let x = (
        DVector::from_column_slice(&report.crisp_x0),
        DVector::from_column_slice(&report.crisp_x1),
    );
    let (lhs, rhs) = method_system(sys, &x, Method::Method2I, tol)?;
    Ok(max_grid_residual(&lhs, &rhs, grid))
}

pub fn solve(p: &FlsProblem, tol: &TolerancePolicy, method: Option<Method>) -> Result<SolveReport> {
    solve_with_grid(p, tol, method, DEFAULT_GRID)
}

/// Solves the embedded system and maps the result back to fuzzy numbers.
///
/// Without an override: nonsingular `S` uses the plain inverse; a consistent
/// system with `y0, y1 in R(S^k)` uses `S^ce Y`; anything else gets the
/// generalized solution `S^ce Y`, recorded as method 2(i). The residual of
/// the system the chosen method solves must vanish within `residual_tol`.
pub fn solve_with_grid(
    p: &FlsProblem,
    tol: &TolerancePolicy,
    method: Option<Method>,
    grid: usize,
) -> Result<SolveReport> {
    tol.validate()?;
    if grid < 2 {
        return Err(Error::DimensionMismatch(format!("residual grid needs at least 2 points, got {grid}")));
    }
    let sys = build_associated(p);
    let classification = classify(&sys, tol)?;
    let k = classification.index_s;
    let s: &DMatrix<f64> = &sys.s;
    let y = (sys.y0_vec(), sys.y1_vec());

    let in_range = || -> Result<bool> {
        if k == 0 {
            return Ok(true);
        }
        let sk = power_of(s, k);
        let scale = norm2(s)?.powi(k as i32);
        Ok(in_range_scaled(&sk, &y.0, scale, tol)? && in_range_scaled(&sk, &y.1, scale, tol)?)
    };

    let method = match method {
        Some(Method::Inverse) if k != 0 => return Err(Error::IndexNonzero(k)),
        Some(Method::CoreEp) if !in_range()? => return Err(Error::NotInRange(k)),
        Some(m) => m,
        None if k == 0 => Method::Inverse,
        None if classification.kind.is_consistent() && in_range()? => Method::CoreEp,
        None => Method::Method2I,
    };

    let x: Affine = if method == Method::Inverse {
        let lu = s.clone().lu();
        let solve = |v: &DVector<f64>| {
            lu.solve(v)
                .ok_or_else(|| Error::NumericalFailure("LU solve of a nonsingular S failed".into()))
        };
        (solve(&y.0)?, solve(&y.1)?)
    } else {
        let sce: DMatrix<f64> = block_core_ep(&sys, tol)?.into_dmatrix();
        (&sce * &y.0, &sce * &y.1)
    };

    let (lhs, rhs) = method_system(&sys, &x, method, tol)?;
    let residual = max_grid_residual(&lhs, &rhs, grid);
    let scale = max_grid_norm(&rhs, grid).max(1.0);
    // NaN fails this too
    let acceptable = residual <= tol.residual_tol * scale;
    if !acceptable {
        return Err(Error::NumericalFailure(format!(
            "{method} solution leaves residual {residual:e} (scale {scale:e})"
        )));
    }

    let crisp_x0: Vec<f64> = x.0.iter().copied().collect();
    let crisp_x1: Vec<f64> = x.1.iter().copied().collect();
    let fuzzy_x = back_map(&crisp_x0, &crisp_x1);
    let verdicts = fuzzy_x.validities();
    Ok(SolveReport {
        classification,
        method,
        crisp_x0,
        crisp_x1,
        fuzzy_x,
        verdicts,
        residual,
        is_generalized: method.is_generalized(),
        grid,
    })
}
