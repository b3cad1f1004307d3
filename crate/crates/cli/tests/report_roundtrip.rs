use coreep::{Classification, Method, SystemKind, TolerancePolicy, Validity, Violation};
use coreep_cli::{CrispSolution, FuzzyRecord, Overall, ProblemFile, ReportFile};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        -1e3..1e3f64,
        Just(0.0),
        Just(-0.0),
    ]
}

fn record() -> impl Strategy<Value = FuzzyRecord> {
    (finite(), finite(), finite(), finite()).prop_map(|(a, b, c, d)| FuzzyRecord {
        lower: [a, b],
        upper: [c, d],
    })
}

fn violation() -> impl Strategy<Value = Violation> {
    prop_oneof![
        Just(Violation::LowerDecreasing),
        Just(Violation::UpperIncreasing),
        (any::<bool>(), any::<bool>()).prop_map(|(at_r0, at_r1)| Violation::LowerAboveUpper { at_r0, at_r1 }),
    ]
}

fn validity() -> impl Strategy<Value = Validity> {
    prop_oneof![
        Just(Validity::Valid),
        prop::collection::vec(violation(), 1..3).prop_map(Validity::Invalid),
    ]
}

fn report() -> impl Strategy<Value = ReportFile> {
    (1usize..5).prop_flat_map(|n| {
        (
            (
                prop_oneof![
                    Just(SystemKind::ConsistentUnique),
                    Just(SystemKind::ConsistentInfinite),
                    Just(SystemKind::Inconsistent)
                ],
                0..2 * n + 1,
                0..2 * n + 1,
                0..2 * n + 1,
            ),
            prop_oneof![
                Just(Method::Inverse),
                Just(Method::CoreEp),
                Just(Method::Method2I),
                Just(Method::Method2II)
            ],
            prop::collection::vec(finite(), 2 * n),
            prop::collection::vec(finite(), 2 * n),
            prop::collection::vec(record(), n),
            prop::collection::vec(validity(), n),
            (any::<bool>(), any::<bool>(), finite(), 2usize..100),
            (1e-16..0.99f64, 1e-16..0.99f64, 1e-16..0.99f64),
        )
            .prop_map(|((kind, rank_s, rank_aug, index_s), method, x0, x1, fuzzy, verdicts, misc, tol)| {
                let (strong, is_generalized, residual, grid) = misc;
                ReportFile {
                    classification: Classification {
                        kind,
                        rank_s,
                        rank_aug,
                        index_s,
                    },
                    method,
                    crisp_solution: CrispSolution { x0, x1 },
                    fuzzy_solution: fuzzy,
                    verdicts,
                    overall: if strong { Overall::Strong } else { Overall::Weak },
                    is_generalized,
                    residual,
                    tolerances: TolerancePolicy {
                        rank_rel_tol: tol.0,
                        residual_tol: tol.1,
                        equality_tol: tol.2,
                    },
                    grid,
                }
            })
    })
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

proptest! {
    #[test]
    fn report_survives_print_and_parse(r in report()) {
        let back = ReportFile::parse(&r.to_json()).unwrap();
        prop_assert_eq!(&back, &r);
        // bitwise, so -0.0 and the last digit of every float survive too
        prop_assert_eq!(bits(&back.crisp_solution.x0), bits(&r.crisp_solution.x0));
        prop_assert_eq!(bits(&back.crisp_solution.x1), bits(&r.crisp_solution.x1));
        let flat = |f: &[FuzzyRecord]| f.iter().flat_map(|z| [z.lower, z.upper].concat()).collect::<Vec<f64>>();
        prop_assert_eq!(bits(&flat(&back.fuzzy_solution)), bits(&flat(&r.fuzzy_solution)));
        prop_assert_eq!(back.residual.to_bits(), r.residual.to_bits());
    }

    #[test]
    fn problem_survives_print_and_parse(
        a in prop::collection::vec(prop::collection::vec(-1e6..1e6f64, 3), 3),
        y in prop::collection::vec(record(), 3),
    ) {
        let p = ProblemFile { a, y };
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(ProblemFile::parse(&text).unwrap(), p);
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let err = ProblemFile::parse(r#"{"a": [[1]], "y": [{"lower": [0, 1], "upper": [2, -1]}], "b": 1}"#).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}
