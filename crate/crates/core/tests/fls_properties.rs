mod support;

use coreep::{
    block_core_ep_from_blocks, build_associated, classify, core_ep_via_formula, in_column_space, matrix_index,
    matrix_power, solve, verify_solution, FlsProblem, FuzzyNumber, FuzzyVector, Method, RealMatrix, SystemKind,
    TolerancePolicy,
};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use support::*;

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn rm(m: &DMatrix<f64>) -> RealMatrix {
    RealMatrix::new(m.clone()).unwrap()
}

/// `(D, E)` whose sum and difference are seeded matrices of controlled index.
fn block_pair(rng: &mut impl Rng) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = rng.random_range(1..=4usize);
    let kp = rng.random_range(0..=n.min(3));
    let kq = rng.random_range(0..=n.min(3));
    let p = seeded(rng, n, kp, false).a;
    let q = seeded(rng, n, kq, false).a;
    ((&p + &q) * 0.5, (&p - &q) * 0.5)
}

fn random_problem(rng: &mut impl Rng, n: usize, a: DMatrix<f64>) -> FlsProblem {
    let y = (0..n)
        .map(|_| {
            let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-3..=3) as f64);
            FuzzyNumber::affine(v[0], v[1], v[2], v[3])
        })
        .collect();
    FlsProblem::new(rm(&a), FuzzyVector::new(y).unwrap()).unwrap()
}

#[test]
fn block_formula_matches_direct_core_ep() {
    let mut rng = rng(31);
    for _ in 0..200 {
        let (d, e) = block_pair(&mut rng);
        let s = block_matrix(&d, &e);
        let direct = core_ep_via_formula(&rm(&s), &tol()).unwrap();
        let block = block_core_ep_from_blocks(&rm(&d), &rm(&e), &tol()).unwrap();
        assert!(close(&block, &direct, 1e-8));

        let n = d.nrows();
        let h = block.view((0, 0), (n, n)).clone_owned();
        let z = block.view((0, n), (n, n)).clone_owned();
        let sum = core_ep_via_formula(&rm(&(&d + &e)), &tol()).unwrap();
        let diff = core_ep_via_formula(&rm(&(&d - &e)), &tol()).unwrap();
        assert!(close(&(&h + &z), &sum, 1e-8));
        assert!(close(&(&h - &z), &diff, 1e-8));
    }
}

#[test]
fn block_formula_on_associated_matrices() {
    let mut rng = rng(32);
    for _ in 0..200 {
        let n = rng.random_range(1..=4);
        let a = integer(&mut rng, n, n, 2);
        let d = a.map(|v| v.max(0.0));
        let e = a.map(|v| (-v).max(0.0));
        let direct = core_ep_via_formula(&rm(&block_matrix(&d, &e)), &tol()).unwrap();
        let block = block_core_ep_from_blocks(&rm(&d), &rm(&e), &tol()).unwrap();
        assert!(close(&block, &direct, 1e-8), "{a}");
    }
}

#[test]
fn powers_of_the_block_matrix() {
    let mut rng = rng(33);
    for _ in 0..100 {
        let n = rng.random_range(1..=4);
        let d = uniform(&mut rng, n, n, -1.5, 1.5);
        let e = uniform(&mut rng, n, n, -1.5, 1.5);
        let s = block_matrix(&d, &e);
        for p in 1..=5 {
            let direct = matrix_power(&rm(&s), p).unwrap();
            let sum = (&d + &e).pow(p as u32);
            let diff = (&d - &e).pow(p as u32);
            let expected = block_matrix(&((&sum + &diff) * 0.5), &((&sum - &diff) * 0.5));
            assert!(close(&direct, &expected, 1e-8));
        }
    }
}

#[test]
fn membership_agrees_with_exact_oracle() {
    let mut rng = rng(34);
    let mut members = 0;
    for case in 0..200 {
        let n = rng.random_range(1..=3);
        let a = integer(&mut rng, n, n, 2);
        let s = block_matrix(&a.map(|v| v.max(0.0)), &a.map(|v| (-v).max(0.0)));
        let exact = to_rational(&s);
        let (k, sk_exact) = exact_index_power(&exact);
        let sk = matrix_power(&rm(&s), k).unwrap();
        let y: Vec<f64> = if case % 2 == 0 {
            let z = DVector::from_fn(2 * n, |_, _| rng.random_range(-2..=2) as f64);
            (&*sk * z).iter().copied().collect()
        } else {
            (0..2 * n).map(|_| rng.random_range(-3..=3) as f64).collect()
        };
        let expected = exact_in_range(&sk_exact, &y);
        members += expected as usize;
        assert_eq!(matrix_index(&rm(&s), &tol()).unwrap(), k);
        assert_eq!(in_column_space(&sk, &y, &tol()).unwrap(), expected);

        let sce = core_ep_via_formula(&rm(&s), &tol()).unwrap();
        let yv = DVector::from_column_slice(&y);
        let reproduced = (&s * (&*sce * &yv) - &yv).norm() <= 1e-8 * yv.norm().max(1.0);
        assert_eq!(reproduced, expected);
    }
    assert!(members >= 100);
}

#[test]
fn classification_agrees_with_exact_ranks() {
    let mut rng = rng(35);
    for _ in 0..200 {
        let n = rng.random_range(1..=3);
        let a = integer(&mut rng, n, n, 2);
        let p = random_problem(&mut rng, n, a);
        let sys = build_associated(&p);
        let c = classify(&sys, &tol()).unwrap();
        let exact_s = to_rational(&sys.s);
        let mut aug = sys.s.as_dmatrix().clone().insert_columns(2 * n, 2, 0.0);
        aug.set_column(2 * n, &DVector::from_column_slice(&sys.y0));
        aug.set_column(2 * n + 1, &DVector::from_column_slice(&sys.y1));
        assert_eq!(c.rank_s, exact_rank(&exact_s));
        assert_eq!(c.rank_aug, exact_rank(&to_rational(&aug)));
        assert_eq!(c.index_s, exact_index_power(&exact_s).0);
        assert_eq!(c.kind.is_consistent(), c.rank_s == c.rank_aug);
        assert_eq!(c.kind == SystemKind::ConsistentUnique, c.rank_s == 2 * n);
    }
}

#[test]
fn solutions_pass_substitution() {
    let mut rng = rng(36);
    for _ in 0..200 {
        let n = rng.random_range(1..=3);
        let a = integer(&mut rng, n, n, 2);
        let p = random_problem(&mut rng, n, a);
        let report = solve(&p, &tol(), None).unwrap();
        let sys = build_associated(&p);
        let residual = verify_solution(&sys, &report, 11, &tol()).unwrap();
        assert!(residual <= 1e-8 * 10.0, "{residual:e}");
        assert_eq!(report.is_generalized, !report.classification.kind.is_consistent() || report.method.is_generalized());
        if report.method == Method::CoreEp || report.method == Method::Inverse {
            assert!(report.classification.kind.is_consistent());
        }
    }
}

#[test]
fn both_generalized_variants_agree() {
    let mut rng = rng(37);
    let mut checked = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=3);
        let a = integer(&mut rng, n, n, 2);
        let p = random_problem(&mut rng, n, a);
        let (Ok(i), Ok(ii)) = (
            solve(&p, &tol(), Some(Method::Method2I)),
            solve(&p, &tol(), Some(Method::Method2II)),
        ) else {
            continue;
        };
        checked += 1;
        for (x, y) in i.crisp_x0.iter().zip(&ii.crisp_x0).chain(i.crisp_x1.iter().zip(&ii.crisp_x1)) {
            assert!((x - y).abs() <= 1e-12);
        }
    }
    assert!(checked >= 100);
}
