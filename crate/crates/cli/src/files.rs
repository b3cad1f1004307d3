//! JSON documents read and written by the binary.

use coreep::{
    Classification, FlsProblem, FuzzyNumber, FuzzyVector, Method, RealMatrix, SolveReport, TolerancePolicy,
    Validity,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// One fuzzy number as `{"lower": [c0, c1], "upper": [c0, c1]}`, each
/// endpoint being `c0 + c1 r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyRecord {
    pub lower: [f64; 2],
    pub upper: [f64; 2],
}

impl From<&FuzzyNumber> for FuzzyRecord {
    fn from(z: &FuzzyNumber) -> Self {
        Self {
            lower: [z.lower.c0, z.lower.c1],
            upper: [z.upper.c0, z.upper.c1],
        }
    }
}

impl From<&FuzzyRecord> for FuzzyNumber {
    fn from(r: &FuzzyRecord) -> Self {
        FuzzyNumber::affine(r.lower[0], r.lower[1], r.upper[0], r.upper[1])
    }
}

fn json_error(what: &str, e: serde_json::Error) -> CliError {
    CliError::Parse(format!("{what}: {e}"))
}

fn parse_value(text: &str, what: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| json_error(what, e))
}

/// Rejects right-hand sides given as sampled endpoint values instead of
/// affine coefficients, with a diagnostic naming the offending entry.
fn reject_sampled_endpoints(doc: &Value) -> Result<(), CliError> {
    let Some(items) = doc.get("y").and_then(Value::as_array) else {
        return Ok(());
    };
    for (i, item) in items.iter().enumerate() {
        let sampled = match item {
            Value::Object(map) => {
                map.contains_key("samples")
                    || map.contains_key("grid")
                    || ["lower", "upper"].iter().any(|k| {
                        map.get(*k)
                            .and_then(Value::as_array)
                            .is_some_and(|a| a.len() != 2 || a.iter().any(|v| !v.is_number()))
                    })
            }
            _ => false,
        };
        if sampled {
            return Err(CliError::Parse(format!(
                "y[{i}]: sampled endpoint encodings are not supported; \
                 give lower and upper as affine coefficients [c0, c1] meaning c0 + c1*r"
            )));
        }
    }
    Ok(())
}

/// `{"a": [[...], ...], "y": [{"lower": [c0, c1], "upper": [c0, c1]}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub a: Vec<Vec<f64>>,
    pub y: Vec<FuzzyRecord>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc = parse_value(text, "problem file")?;
        reject_sampled_endpoints(&doc)?;
        serde_json::from_value(doc).map_err(|e| json_error("problem file", e))
    }

    pub fn from_problem(p: &FlsProblem) -> Self {
        Self {
            a: p.a().to_rows(),
            y: p.y().iter().map(FuzzyRecord::from).collect(),
        }
    }

    pub fn to_problem(&self) -> Result<FlsProblem, CliError> {
        let a = RealMatrix::from_rows(&self.a)?;
        if !a.is_square() {
            return Err(CliError::Dimension(format!(
                "a must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if self.y.len() != a.rows() {
            return Err(CliError::Dimension(format!(
                "y has {} entries but a is {}x{}",
                self.y.len(),
                a.rows(),
                a.cols()
            )));
        }
        let y = FuzzyVector::new(self.y.iter().map(FuzzyNumber::from).collect())
            .expect("length checked against a non-empty matrix");
        Ok(FlsProblem::new(a, y)?)
    }
}

/// A single matrix: either a bare array of rows or `{"matrix": [[...], ...]}`.
pub fn parse_matrix(text: &str) -> Result<RealMatrix, CliError> {
    let doc = parse_value(text, "matrix file")?;
    let rows = match doc {
        Value::Object(mut map) if map.len() == 1 && map.contains_key("matrix") => map.remove("matrix").unwrap(),
        Value::Array(_) => doc,
        _ => {
            return Err(CliError::Parse(
                "matrix file: expected an array of rows or {\"matrix\": [[...]]}".into(),
            ))
        }
    };
    let rows: Vec<Vec<f64>> = serde_json::from_value(rows).map_err(|e| json_error("matrix file", e))?;
    Ok(RealMatrix::from_rows(&rows)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrispSolution {
    pub x0: Vec<f64>,
    pub x1: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Strong,
    Weak,
}

/// Machine-readable solve report. Floats are written in shortest
/// round-trip form, so printing and re-parsing is lossless.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub classification: Classification,
    pub method: Method,
    pub crisp_solution: CrispSolution,
    pub fuzzy_solution: Vec<FuzzyRecord>,
    pub verdicts: Vec<Validity>,
    pub overall: Overall,
    pub is_generalized: bool,
    pub residual: f64,
    pub tolerances: TolerancePolicy,
    pub grid: usize,
}

impl ReportFile {
    pub fn new(report: &SolveReport, tol: &TolerancePolicy) -> Self {
        Self {
            classification: report.classification,
            method: report.method,
            crisp_solution: CrispSolution {
                x0: report.crisp_x0.clone(),
                x1: report.crisp_x1.clone(),
            },
            fuzzy_solution: report.fuzzy_x.iter().map(FuzzyRecord::from).collect(),
            verdicts: report.verdicts.clone(),
            overall: if report.is_strong() { Overall::Strong } else { Overall::Weak },
            is_generalized: report.is_generalized,
            residual: report.residual,
            tolerances: *tol,
            grid: report.grid,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| json_error("report file", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }

    pub fn fuzzy_numbers(&self) -> Vec<FuzzyNumber> {
        self.fuzzy_solution.iter().map(FuzzyNumber::from).collect()
    }
}
