//! Parametric fuzzy numbers with affine endpoint functions.
//!
//! A fuzzy number is a pair `(lower(r), upper(r))` on `r in [0, 1]`. Only the
//! affine family `c0 + c1 r` is represented; it is closed under everything
//! the solver does (real matrix times affine vector).

use std::fmt;
use std::ops::{Add, Neg};

use serde::{Deserialize, Serialize};

/// `c0 + c1 * r` on `r in [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AffineFn {
    pub c0: f64,
    pub c1: f64,
}

impl AffineFn {
    pub const ZERO: AffineFn = AffineFn { c0: 0.0, c1: 0.0 };

    pub const fn new(c0: f64, c1: f64) -> Self {
        Self { c0, c1 }
    }

    pub const fn constant(c0: f64) -> Self {
        Self { c0, c1: 0.0 }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.c0 + self.c1 * r
    }

    pub fn scale(&self, lambda: f64) -> Self {
        Self::new(lambda * self.c0, lambda * self.c1)
    }

    pub fn is_finite(&self) -> bool {
        self.c0.is_finite() && self.c1.is_finite()
    }
}

impl Add for AffineFn {
    type Output = AffineFn;

    fn add(self, rhs: AffineFn) -> AffineFn {
        AffineFn::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl Neg for AffineFn {
    type Output = AffineFn;

    fn neg(self) -> AffineFn {
        AffineFn::new(-self.c0, -self.c1)
    }
}

impl fmt::Display for AffineFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.c1.is_sign_negative() { '-' } else { '+' };
        write!(f, "{} {} {}r", self.c0, sign, self.c1.abs())
    }
}

/// Requirement of a fuzzy number that a pair of endpoint functions breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// The lower endpoint is not nondecreasing.
    LowerDecreasing,
    /// The upper endpoint is not nonincreasing.
    UpperIncreasing,
    /// `lower(r) > upper(r)` at `r = 0` and/or `r = 1`.
    LowerAboveUpper { at_r0: bool, at_r1: bool },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LowerDecreasing => write!(f, "lower endpoint decreasing"),
            Violation::UpperIncreasing => write!(f, "upper endpoint increasing"),
            Violation::LowerAboveUpper { at_r0, at_r1 } => {
                let at = match (at_r0, at_r1) {
                    (true, true) => "r=0 and r=1",
                    (true, false) => "r=0",
                    _ => "r=1",
                };
                write!(f, "lower above upper at {at}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "violations", rename_all = "snake_case")]
pub enum Validity {
    Valid,
    Invalid(Vec<Violation>),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Parametric fuzzy number `(lower(r), upper(r))`.
///
/// Pairs that break the fuzzy-number requirements are still representable;
/// [`FuzzyNumber::validity`] reports what is wrong with them.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FuzzyNumber {
    pub lower: AffineFn,
    pub upper: AffineFn,
}

impl FuzzyNumber {
    pub const ZERO: FuzzyNumber = FuzzyNumber {
        lower: AffineFn::ZERO,
        upper: AffineFn::ZERO,
    };

    pub const fn new(lower: AffineFn, upper: AffineFn) -> Self {
        Self { lower, upper }
    }

    /// Shorthand for `(l0 + l1 r, u0 + u1 r)`.
    pub const fn affine(l0: f64, l1: f64, u0: f64, u1: f64) -> Self {
        Self::new(AffineFn::new(l0, l1), AffineFn::new(u0, u1))
    }

    pub fn crisp(value: f64) -> Self {
        Self::new(AffineFn::constant(value), AffineFn::constant(value))
    }

    /// Lambda times the number; a negative factor swaps the endpoints.
    pub fn scalar_mul(&self, lambda: f64) -> Self {
        if lambda >= 0.0 {
            Self::new(self.lower.scale(lambda), self.upper.scale(lambda))
        } else {
            Self::new(self.upper.scale(lambda), self.lower.scale(lambda))
        }
    }

    /// Coefficientwise comparison within `tol`.
    pub fn fuzzy_eq(&self, other: &FuzzyNumber, tol: f64) -> bool {
        [
            (self.lower.c0, other.lower.c0),
            (self.lower.c1, other.lower.c1),
            (self.upper.c0, other.upper.c0),
            (self.upper.c1, other.upper.c1),
        ]
        .iter()
        .all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn validity(&self) -> Validity {
        let mut violations = Vec::new();
        if self.lower.c1 < 0.0 {
            violations.push(Violation::LowerDecreasing);
        }
        if self.upper.c1 > 0.0 {
            violations.push(Violation::UpperIncreasing);
        }
        let at_r0 = self.lower.eval(0.0) > self.upper.eval(0.0);
        let at_r1 = self.lower.eval(1.0) > self.upper.eval(1.0);
        if at_r0 || at_r1 {
            violations.push(Violation::LowerAboveUpper { at_r0, at_r1 });
        }
        if violations.is_empty() {
            Validity::Valid
        } else {
            Validity::Invalid(violations)
        }
    }

    /// `(r, lower(r), upper(r))` on a uniform grid of `points >= 2` values.
    pub fn sample(&self, points: usize) -> Vec<(f64, f64, f64)> {
        uniform_grid(points)
            .map(|r| (r, self.lower.eval(r), self.upper.eval(r)))
            .collect()
    }
}

impl Add for FuzzyNumber {
    type Output = FuzzyNumber;

    fn add(self, rhs: FuzzyNumber) -> FuzzyNumber {
        FuzzyNumber::new(self.lower + rhs.lower, self.upper + rhs.upper)
    }
}

impl fmt::Display for FuzzyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

/// `points` uniformly spaced values covering `[0, 1]` (at least the endpoints).
pub fn uniform_grid(points: usize) -> impl Iterator<Item = f64> {
    let points = points.max(2);
    (0..points).map(move |i| i as f64 / (points - 1) as f64)
}

/// Non-empty vector of fuzzy numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FuzzyVector(Vec<FuzzyNumber>);

impl FuzzyVector {
    /// Returns `None` for an empty list.
    pub fn new(items: Vec<FuzzyNumber>) -> Option<Self> {
        (!items.is_empty()).then_some(Self(items))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[FuzzyNumber] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FuzzyNumber> {
        self.0.iter()
    }

    pub fn validities(&self) -> Vec<Validity> {
        self.0.iter().map(FuzzyNumber::validity).collect()
    }
}

impl std::ops::Index<usize> for FuzzyVector {
    type Output = FuzzyNumber;

    fn index(&self, i: usize) -> &FuzzyNumber {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a FuzzyVector {
    type Item = &'a FuzzyNumber;
    type IntoIter = std::slice::Iter<'a, FuzzyNumber>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
