//! Interval certificates for computed quantities.
//!
//! Every numerical quantity the lab reports (operator norm, numerical radius,
//! gap, opening, ...) comes with a `[lower, upper]` interval and a method tag
//! stating how much of the interval is actually certified. Exact formulas and
//! extreme-point enumerations are tight; multistart searches certify one side
//! and report an honest heuristic for the other.

use crate::space::Vector;

/// How a bound certificate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMethod {
    /// Closed-form value (column sums, singular values, chord lengths, ...).
    ExactFormula,
    /// Exhaustive maximum over the extreme points of a polytope ball.
    ExtremePointEnumeration,
    /// Multistart local search: the witnessed side is certified, the other
    /// side carries stagnation-derived slack.
    MultistartHeuristic,
    /// Dense sphere sampling; a lower bound only, capped by trivial bounds.
    DenseSamplingOracle,
}

impl BoundMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundMethod::ExactFormula => "exact_formula",
            BoundMethod::ExtremePointEnumeration => "extreme_point_enumeration",
            BoundMethod::MultistartHeuristic => "multistart_heuristic",
            BoundMethod::DenseSamplingOracle => "dense_sampling_oracle",
        }
    }
}

/// A point or a (point, functional) pair attaining the certified side.
#[derive(Debug, Clone)]
pub enum Witness {
    Point(Vector),
    Pair { x: Vector, f: Vector },
}

/// Two-sided bound with provenance.
#[derive(Debug, Clone)]
pub struct BoundsCertificate {
    pub lower: f64,
    pub upper: f64,
    pub method: BoundMethod,
    pub witnesses: Vec<Witness>,
    pub budget_used: u64,
}

impl BoundsCertificate {
    pub fn exact(value: f64, witnesses: Vec<Witness>, budget_used: u64) -> Self {
        BoundsCertificate { lower: value, upper: value, method: BoundMethod::ExactFormula, witnesses, budget_used }
    }

    pub fn enumerated(value: f64, witnesses: Vec<Witness>, budget_used: u64) -> Self {
        BoundsCertificate {
            lower: value,
            upper: value,
            method: BoundMethod::ExtremePointEnumeration,
            witnesses,
            budget_used,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn interval(&self) -> Interval {
        Interval { lower: self.lower, upper: self.upper }
    }
}

/// Plain closed interval `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn new(lower: f64, upper: f64) -> Self {
        Interval { lower, upper }
    }

    pub fn point(value: f64) -> Self {
        Interval { lower: value, upper: value }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// `true` when `self` is a subset of `other`.
    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }
}

/// Search effort for multistart routines. `restarts` independent starts, each
/// running at most `steps` ascent/descent iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub restarts: u32,
    pub steps: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { restarts: 64, steps: 500 }
    }
}

impl SearchBudget {
    pub fn new(restarts: u32, steps: u32) -> Self {
        SearchBudget { restarts, steps }
    }

    /// CLI-facing: a single integer is interpreted as a restart count at the
    /// default step limit.
    pub fn from_restarts(restarts: u32) -> Self {
        SearchBudget { restarts, steps: SearchBudget::default().steps }
    }

    pub fn doubled(&self) -> Self {
        SearchBudget { restarts: self.restarts.saturating_mul(2), steps: self.steps }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let r = ((self.restarts as f64 * factor).ceil() as u32).max(1);
        SearchBudget { restarts: r, steps: self.steps }
    }
}

/// Two-tier tolerances: `exactness` separates modeling error from float
/// noise (`arithmetic`). Both overridable per call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub exactness: f64,
    pub arithmetic: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { exactness: 1e-9, arithmetic: 1e-12 }
    }
}
