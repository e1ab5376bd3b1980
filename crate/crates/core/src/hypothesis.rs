//! Grid certification of admissibility conditions.
//!
//! Every reverse inequality claims nothing unless its hypothesis holds, so
//! each condition is checked exhaustively: pointwise conditions at every
//! node, pairwise conditions at every ordered node pair `(t_i, s_j)` with
//! `i <= j`. A check reports the worst slack and where it occurs; ties go
//! to the smallest node index (lexicographic for pairs), which keeps the
//! reduction deterministic.
//!
//! Margins are absolute slacks. `holds` means `worst_margin >= -tol`, with
//! the tolerance applied symmetrically so constructed equality cases come
//! out as holding.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::HypothesisError;
use crate::grid::GridFunction;
use crate::profile::ScalarProfile;
use crate::vector::ComplexVector;

/// Default absolute tolerance on hypothesis slacks.
pub const DEFAULT_TOL_HYP: f64 = 1e-9;

/// Margin reported for a zero sample in the argument-cone check, where the
/// argument is undefined. Any legitimate argument gives a margin above
/// `theta - pi > -pi`, so this value always reads as a violation.
pub const ZERO_ARGUMENT_MARGIN: f64 = -PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Node(usize),
    Pair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub holds: bool,
    /// Minimum slack over all checked points; negative means violated.
    pub worst_margin: f64,
    pub worst_location: Location,
}

impl HypothesisReport {
    fn from_margin(worst_margin: f64, worst_location: Location, tol: f64) -> Self {
        Self {
            holds: worst_margin >= -tol,
            worst_margin,
            worst_location,
        }
    }
}

/// Named admissibility condition with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum HypothesisSpec {
    /// `||f(t)|| <= K Re<f(t), e>` at every node, `K >= 1`.
    #[serde(rename = "diaz-metcalf-K")]
    DiazMetcalf {
        #[serde(rename = "K")]
        constant: f64,
        e: ComplexVector,
    },
    /// `||f(t) - e|| <= rho` at every node, `rho` in `(0, 1)`.
    #[serde(rename = "ball-rho")]
    BallRadius { rho: f64, e: ComplexVector },
    /// `||f(t) - e|| <= r(t)` at every node.
    #[serde(rename = "ball-r-of-t")]
    BallProfile { r: ScalarProfile, e: ComplexVector },
    /// `Re<M e - f(t), f(t) - m e> >= 0` at every node, `M >= m > 0`;
    /// equivalently `||f(t) - (M+m)/2 e|| <= (M-m)/2`. Both forms are
    /// evaluated and must agree.
    #[serde(rename = "mM-with-e")]
    DirectionBand {
        #[serde(rename = "m")]
        lower: f64,
        #[serde(rename = "M")]
        upper: f64,
        e: ComplexVector,
    },
    /// `||f(t)|| - Re<f(t), e> <= k(t)` at every node, `k >= 0`.
    #[serde(rename = "additive-k-of-t")]
    AdditiveDefect { k: ScalarProfile, e: ComplexVector },
    /// `Re<M f(s) - f(t), f(t) - m f(s)> >= 0` on `t <= s`,
    /// `M >= 1 >= m >= 0`.
    #[serde(rename = "pairwise-mM")]
    PairwiseBand {
        #[serde(rename = "m")]
        lower: f64,
        #[serde(rename = "M")]
        upper: f64,
    },
    /// Same bilinear condition with free real bounds `gamma, Gamma`.
    #[serde(rename = "pairwise-gammaGamma")]
    PairwiseSpan {
        #[serde(rename = "gamma")]
        lower: f64,
        #[serde(rename = "Gamma")]
        upper: f64,
    },
    /// Componentwise chain `m Re f(s) <= Re f(t) <= M Re f(s)` (and the
    /// same for imaginary parts) on `t <= s`; scalar-valued functions only.
    #[serde(rename = "complex-componentwise")]
    ComplexComponentwise {
        #[serde(rename = "m")]
        lower: f64,
        #[serde(rename = "M")]
        upper: f64,
    },
    /// `|arg f(t)| <= theta` at every node, `theta` in `(0, pi/2)`.
    #[serde(rename = "karamata-theta")]
    ArgumentCone { theta: f64 },
}

impl HypothesisSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::DiazMetcalf { .. } => "diaz-metcalf-K",
            Self::BallRadius { .. } => "ball-rho",
            Self::BallProfile { .. } => "ball-r-of-t",
            Self::DirectionBand { .. } => "mM-with-e",
            Self::AdditiveDefect { .. } => "additive-k-of-t",
            Self::PairwiseBand { .. } => "pairwise-mM",
            Self::PairwiseSpan { .. } => "pairwise-gammaGamma",
            Self::ComplexComponentwise { .. } => "complex-componentwise",
            Self::ArgumentCone { .. } => "karamata-theta",
        }
    }

    /// Kind-specific parameter invariants.
    pub fn validate(&self) -> Result<(), HypothesisError> {
        match self {
            Self::DiazMetcalf { constant, e } => {
                // ||f|| <= K Re<f, e> <= K ||f|| forces K >= 1 for nonzero f.
                if !constant.is_finite() || *constant < 1.0 {
                    return Err(HypothesisError::InvalidSpec(format!(
                        "K must be >= 1 (got {constant})"
                    )));
                }
                check_unit(e)
            }
            Self::BallRadius { rho, e } => {
                if !(*rho > 0.0 && *rho < 1.0) {
                    return Err(HypothesisError::InvalidSpec(format!(
                        "rho must lie in (0, 1) (got {rho})"
                    )));
                }
                check_unit(e)
            }
            Self::BallProfile { e, .. } => check_unit(e),
            Self::DirectionBand { lower, upper, e } => {
                if !(*upper >= *lower && *lower > 0.0) || !upper.is_finite() {
                    return Err(HypothesisError::InvalidSpec(format!(
                        "need M >= m > 0 (got m = {lower}, M = {upper})"
                    )));
                }
                check_unit(e)
            }
            Self::AdditiveDefect { e, .. } => check_unit(e),
            Self::PairwiseBand { lower, upper } | Self::ComplexComponentwise { lower, upper } => {
                if !(*upper >= 1.0 && *lower <= 1.0 && *lower >= 0.0) || !upper.is_finite() {
                    return Err(HypothesisError::InvalidSpec(format!(
                        "need M >= 1 >= m >= 0 (got m = {lower}, M = {upper})"
                    )));
                }
                Ok(())
            }
            Self::PairwiseSpan { lower, upper } => {
                if !lower.is_finite() || !upper.is_finite() {
                    return Err(HypothesisError::InvalidSpec(
                        "gamma and Gamma must be finite".to_string(),
                    ));
                }
                Ok(())
            }
            Self::ArgumentCone { theta } => {
                if !(*theta > 0.0 && *theta < FRAC_PI_2) {
                    return Err(HypothesisError::InvalidSpec(format!(
                        "theta must lie in (0, pi/2) (got {theta})"
                    )));
                }
                Ok(())
            }
        }
    }
}

fn check_unit(e: &ComplexVector) -> Result<(), HypothesisError> {
    if !e.is_unit(1e-12) {
        return Err(HypothesisError::NotUnit { norm: e.norm() });
    }
    Ok(())
}

/// Slack of the bilinear condition `Re<U y - x, x - L y> >= 0`, computed
/// by expanding to `(U + L) Re<x, y> - ||x||^2 - L U ||y||^2`.
pub fn band_slack_expanded(
    x: &ComplexVector,
    y: &ComplexVector,
    lower: f64,
    upper: f64,
) -> Result<f64, HypothesisError> {
    let r = x.re_inner(y)?;
    Ok((upper + lower) * r - x.norm_sq() - lower * upper * y.norm_sq())
}

/// Same slack computed the direct way: build both factors and take the
/// real inner product. Kept as an independent route for cross-checking.
pub fn band_slack_direct(
    x: &ComplexVector,
    y: &ComplexVector,
    lower: f64,
    upper: f64,
) -> Result<f64, HypothesisError> {
    let left = y.scaled(upper).sub(x)?;
    let right = x.sub(&y.scaled(lower))?;
    Ok(left.re_inner(&right)?)
}

/// Slack of the equivalent ball form
/// `(U - L)/2 ||y|| - ||x - (U + L)/2 y||` (linear scale).
pub fn band_slack_ball(
    x: &ComplexVector,
    y: &ComplexVector,
    lower: f64,
    upper: f64,
) -> Result<f64, HypothesisError> {
    let radius = 0.5 * (upper - lower).abs() * y.norm();
    let center_dist = x.sub(&y.scaled(0.5 * (upper + lower)))?.norm();
    Ok(radius - center_dist)
}

/// Acceptance indicators of the bilinear and ball forms at one pair,
/// each at tolerance `tol`. The two sides of the equivalence.
pub fn equivalence_indicators(
    x: &ComplexVector,
    y: &ComplexVector,
    lower: f64,
    upper: f64,
    tol: f64,
) -> Result<(bool, bool), HypothesisError> {
    let bilinear = band_slack_direct(x, y, lower, upper)?;
    let ball = band_slack_ball(x, y, lower, upper)?;
    Ok((bilinear >= -tol, ball >= -tol))
}

struct WorstTracker {
    margin: f64,
    location: Location,
}

impl WorstTracker {
    fn new() -> Self {
        Self {
            margin: f64::INFINITY,
            location: Location::Node(0),
        }
    }

    fn update(&mut self, margin: f64, location: Location) {
        // strict comparison keeps the first (smallest-index) minimum
        if margin < self.margin {
            self.margin = margin;
            self.location = location;
        }
    }

    fn report(self, tol: f64) -> HypothesisReport {
        HypothesisReport::from_margin(self.margin, self.location, tol)
    }
}

/// Check a node-pointwise condition against a unit vector `e`.
pub fn check_pointwise_e(
    f: &GridFunction,
    spec: &HypothesisSpec,
    tol: f64,
) -> Result<HypothesisReport, HypothesisError> {
    spec.validate()?;
    match spec {
        HypothesisSpec::DiazMetcalf { constant, e } => {
            pointwise(f, e, |_, v, re_e| Ok(constant * re_e - v.norm()), tol)
        }
        HypothesisSpec::BallRadius { rho, e } => {
            pointwise(f, e, |_, v, _| Ok(rho - v.sub(e)?.norm()), tol)
        }
        HypothesisSpec::BallProfile { r, e } => {
            let samples = r.sample(f.a(), f.b(), f.segments());
            check_radius_bound_values(f, e, &samples, tol)
        }
        HypothesisSpec::DirectionBand { lower, upper, e } => {
            check_direction_band(f, e, *lower, *upper, tol)
        }
        HypothesisSpec::AdditiveDefect { k, e } => {
            let samples = k.sample(f.a(), f.b(), f.segments());
            check_defect_bound_values(f, e, &samples, tol)
        }
        other => Err(HypothesisError::KindMismatch {
            op: "check_pointwise_e",
            kind: other.kind().to_string(),
        }),
    }
}

fn pointwise<S>(
    f: &GridFunction,
    e: &ComplexVector,
    slack: S,
    tol: f64,
) -> Result<HypothesisReport, HypothesisError>
where
    S: Fn(f64, &ComplexVector, f64) -> Result<f64, HypothesisError>,
{
    let mut worst = WorstTracker::new();
    for (i, v) in f.values().iter().enumerate() {
        let re_e = v.re_inner(e)?;
        let margin = slack(f.node(i), v, re_e)?;
        worst.update(margin, Location::Node(i));
    }
    Ok(worst.report(tol))
}

/// Defect bound `||f(t)|| - Re<f(t), e> <= k_i` with the bound given at
/// the nodes; `k` must be nonnegative there.
pub fn check_defect_bound_values(
    f: &GridFunction,
    e: &ComplexVector,
    k: &[f64],
    tol: f64,
) -> Result<HypothesisReport, HypothesisError> {
    check_unit(e)?;
    check_sample_count(f, k, "k")?;
    let mut worst = WorstTracker::new();
    for (i, v) in f.values().iter().enumerate() {
        if k[i] < -tol {
            return Err(HypothesisError::NegativeProfile {
                name: "k",
                value: k[i],
                at: f.node(i),
            });
        }
        let margin = k[i] - (v.norm() - v.re_inner(e)?);
        worst.update(margin, Location::Node(i));
    }
    Ok(worst.report(tol))
}

/// Radius bound `||f(t) - e|| <= r_i` with the radius given at the nodes.
pub fn check_radius_bound_values(
    f: &GridFunction,
    e: &ComplexVector,
    r: &[f64],
    tol: f64,
) -> Result<HypothesisReport, HypothesisError> {
    check_unit(e)?;
    check_sample_count(f, r, "r")?;
    let mut worst = WorstTracker::new();
    for (i, v) in f.values().iter().enumerate() {
        let margin = r[i] - v.sub(e)?.norm();
        worst.update(margin, Location::Node(i));
    }
    Ok(worst.report(tol))
}

fn check_sample_count(
    f: &GridFunction,
    samples: &[f64],
    name: &str,
) -> Result<(), HypothesisError> {
    if samples.len() != f.values().len() {
        return Err(HypothesisError::InvalidSpec(format!(
            "{name} has {} samples for {} nodes",
            samples.len(),
            f.values().len()
        )));
    }
    Ok(())
}

/// Both sides of the `mM-with-e` equivalence are evaluated; `holds` comes
/// from the bilinear form and the two decisions must match at every node.
fn check_direction_band(
    f: &GridFunction,
    e: &ComplexVector,
    lower: f64,
    upper: f64,
    tol: f64,
) -> Result<HypothesisReport, HypothesisError> {
    let mut worst = WorstTracker::new();
    for (i, v) in f.values().iter().enumerate() {
        let bilinear = band_slack_expanded(v, e, lower, upper)?;
        let ball = band_slack_ball(v, e, lower, upper)?;
        if (bilinear >= -tol) != (ball >= -tol) {
            return Err(HypothesisError::FormsDisagree { node: i });
        }
        worst.update(bilinear, Location::Node(i));
    }
    Ok(worst.report(tol))
}

/// Check a pairwise bilinear condition on all ordered node pairs.
pub fn check_pairwise(
    f: &GridFunction,
    spec: &HypothesisSpec,
    tol: f64,
) -> Result<HypothesisReport, HypothesisError> {
    spec.validate()?;
    let (lower, upper) = match spec {
        HypothesisSpec::PairwiseBand { lower, upper }
        | HypothesisSpec::PairwiseSpan { lower, upper } => (*lower, *upper),
        other => {
            return Err(HypothesisError::KindMismatch {
                op: "check_pairwise",
                kind: other.kind().to_string(),
            })
        }
    };
    let values = f.values();
    let n = f.segments();
    let norm_sq: Vec<f64> = values.iter().map(|v| v.norm_sq()).collect();
    let mut worst = WorstTracker::new();
    for i in 0..=n {
        for j in i..=n {
            let r = values[i].re_inner(&values[j])?;
            let slack = (upper + lower) * r - norm_sq[i] - lower * upper * norm_sq[j];
            worst.update(slack, Location::Pair(i, j));
        }
    }
    Ok(worst.report(tol))
}

/// Pairwise agreement between the bilinear form and its ball form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub pairs_checked: usize,
    pub disagreements: usize,
    pub first_disagreement: Option<(usize, usize)>,
}

/// Compare the acceptance decisions of the two equivalent pairwise forms
/// at every ordered node pair. The count must be zero.
pub fn check_equivalence_forms(
    f: &GridFunction,
    spec: &HypothesisSpec,
    tol: f64,
) -> Result<EquivalenceReport, HypothesisError> {
    spec.validate()?;
    let (lower, upper) = match spec {
        HypothesisSpec::PairwiseBand { lower, upper }
        | HypothesisSpec::PairwiseSpan { lower, upper } => (*lower, *upper),
        other => {
            return Err(HypothesisError::KindMismatch {
                op: "check_equivalence_forms",
                kind: other.kind().to_string(),
            })
        }
    };
    let values = f.values();
    let n = f.segments();
    let mut pairs_checked = 0;
    let mut disagreements = 0;
    let mut first = None;
    for i in 0..=n {
        for j in i..=n {
            let (a, b) = equivalence_indicators(&values[i], &values[j], lower, upper, tol)?;
            pairs_checked += 1;
            if a != b {
                disagreements += 1;
                if first.is_none() {
                    first = Some((i, j));
                }
            }
        }
    }
    Ok(EquivalenceReport {
        pairs_checked,
        disagreements,
        first_disagreement: first,
    })
}

/// Componentwise real/imaginary chain for scalar-valued functions.
///
/// At every ordered pair the four slacks of
/// `m Re f(s) <= Re f(t) <= M Re f(s)` and the imaginary twin are reduced
/// to their minimum. The product form `Re[(M f(s) - f(t))(conj f(t) -
/// m conj f(s))] >= 0` is evaluated alongside; whenever the chain holds at
/// a pair the product form must too, and a breach is surfaced as an error
/// rather than a report.
pub fn check_complex_componentwise(
    f: &GridFunction,
    lower: f64,
    upper: f64,
    tol: f64,
) -> Result<HypothesisReport, HypothesisError> {
    let spec = HypothesisSpec::ComplexComponentwise { lower, upper };
    spec.validate()?;
    if f.dim() != 1 {
        return Err(HypothesisError::ScalarOnly { dim: f.dim() });
    }
    let zs: Vec<_> = f.values().iter().map(|v| v.coords()[0]).collect();
    let n = f.segments();
    let mut worst = WorstTracker::new();
    for i in 0..=n {
        for j in i..=n {
            let x = zs[i];
            let y = zs[j];
            let chain = (x.re - lower * y.re)
                .min(upper * y.re - x.re)
                .min(x.im - lower * y.im)
                .min(upper * y.im - x.im);
            if chain >= 0.0 {
                let product = (upper + lower) * (x.re * y.re + x.im * y.im)
                    - x.norm_sqr()
                    - lower * upper * y.norm_sqr();
                if product < -tol {
                    return Err(HypothesisError::ImplicationViolated { i, j });
                }
            }
            worst.update(chain, Location::Pair(i, j));
        }
    }
    Ok(worst.report(tol))
}

/// Principal-value argument cone check for scalar-valued functions.
/// Zero samples have no argument and fail the check.
pub fn check_karamata(
    f: &GridFunction,
    theta: f64,
    tol: f64,
) -> Result<HypothesisReport, HypothesisError> {
    HypothesisSpec::ArgumentCone { theta }.validate()?;
    if f.dim() != 1 {
        return Err(HypothesisError::ScalarOnly { dim: f.dim() });
    }
    let mut worst = WorstTracker::new();
    for (i, v) in f.values().iter().enumerate() {
        let z = v.coords()[0];
        let margin = if z.norm_sqr() == 0.0 {
            ZERO_ARGUMENT_MARGIN
        } else {
            theta - z.arg().abs()
        };
        worst.update(margin, Location::Node(i));
    }
    Ok(worst.report(tol))
}

/// Dispatch a spec to the checker that owns its kind.
pub fn check(
    f: &GridFunction,
    spec: &HypothesisSpec,
    tol: f64,
) -> Result<HypothesisReport, HypothesisError> {
    match spec {
        HypothesisSpec::DiazMetcalf { .. }
        | HypothesisSpec::BallRadius { .. }
        | HypothesisSpec::BallProfile { .. }
        | HypothesisSpec::DirectionBand { .. }
        | HypothesisSpec::AdditiveDefect { .. } => check_pointwise_e(f, spec, tol),
        HypothesisSpec::PairwiseBand { .. } | HypothesisSpec::PairwiseSpan { .. } => {
            check_pairwise(f, spec, tol)
        }
        HypothesisSpec::ComplexComponentwise { lower, upper } => {
            check_complex_componentwise(f, *lower, *upper, tol)
        }
        HypothesisSpec::ArgumentCone { theta } => check_karamata(f, *theta, tol),
    }
}
