//! Error types shared across the crate.

use thiserror::Error;

use crate::hypothesis::HypothesisReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VectorError {
    #[error("vector must have at least one coordinate")]
    Empty,
    #[error("non-finite coordinate at index {index}")]
    NonFinite { index: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("interval endpoints must satisfy a < b (got a = {a}, b = {b})")]
    BadInterval { a: f64, b: f64 },
    #[error("grid needs an even segment count of at least 2 (got {n})")]
    BadSegmentCount { n: usize },
    #[error("grid values must share one dimension (node {index} has dim {found}, expected {expected})")]
    MixedDimensions {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error(transparent)]
    Vector(#[from] VectorError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("expected a unit vector for {role} (norm = {norm})")]
    NotUnit { role: &'static str, norm: f64 },
    #[error("ball direction must be orthogonal to e (re-inner = {value})")]
    NotOrthogonal { value: f64 },
    #[error("ball radius must lie in (0, 1) (got {rho})")]
    BadRadius { rho: f64 },
    #[error("modulation must stay in [-1, 1] (|value| = {value} at node {index})")]
    ModulationOutOfRange { index: usize, value: f64 },
    #[error("derivative bounds must satisfy theta <= 0 <= Theta (got {theta}, {theta_upper})")]
    BadDerivativeBounds { theta: f64, theta_upper: f64 },
    #[error("psi derivative leaves [{theta}, {theta_upper}] at u = {at} (value {value})")]
    DerivativeOutOfRange {
        theta: f64,
        theta_upper: f64,
        at: f64,
        value: f64,
    },
    #[error("unknown family parameter `{name}`")]
    UnknownParameter { name: String },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Vector(#[from] VectorError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("composite Simpson needs an even segment count of at least 2 (got {n})")]
    BadSegmentCount { n: usize },
    #[error("grid has {grid} segments but the rule is configured for {config}")]
    GridMismatch { grid: usize, config: usize },
    #[error("non-finite {what} at node {index}")]
    NonFiniteSample { what: &'static str, index: usize },
    #[error("kernel evaluation produced a non-finite value at pair ({i}, {j})")]
    KernelEvaluation { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypothesisError {
    #[error("invalid hypothesis parameter: {0}")]
    InvalidSpec(String),
    #[error("hypothesis `{kind}` cannot be evaluated by {op}")]
    KindMismatch { op: &'static str, kind: String },
    #[error("hypothesis requires scalar-valued samples (dim 1), got dim {dim}")]
    ScalarOnly { dim: usize },
    #[error("reference vector must be a unit vector (norm = {norm})")]
    NotUnit { norm: f64 },
    #[error("profile `{name}` must be nonnegative (value {value} at t = {at})")]
    NegativeProfile {
        name: &'static str,
        value: f64,
        at: f64,
    },
    #[error("equivalent hypothesis forms disagree at node {node}")]
    FormsDisagree { node: usize },
    #[error("componentwise bound holds but the product form fails at pair ({i}, {j})")]
    ImplicationViolated { i: usize, j: usize },
    #[error(transparent)]
    Vector(#[from] VectorError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    /// The theorem's precondition failed on the grid, so the inequality
    /// claims nothing; distinct from a violated inequality.
    #[error("hypothesis unmet for `{id}`: worst margin {margin:e}", margin = .report.worst_margin)]
    HypothesisUnmet {
        id: String,
        report: HypothesisReport,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Hypothesis(#[from] HypothesisError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Vector(#[from] VectorError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("search range for `{name}` is empty ({lo} > {hi})")]
    EmptyRange { name: String, lo: f64, hi: f64 },
    #[error("no feasible candidate satisfied the hypothesis")]
    EmptyFeasibleSet,
    #[error("free parameter `{name}` binds neither the family nor the inequality")]
    UnboundParameter { name: String },
    #[error("no constructive equality witness for `{id}`")]
    UnsupportedWitness { id: String },
    #[error("witness for `{id}` needs {requirement}")]
    WitnessConstraint { id: String, requirement: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Grid(#[from] GridError),
}
