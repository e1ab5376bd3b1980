//! Inequality evaluation: every reverse bound becomes an LHS/RHS report
//! with gaps, an equality-case residual where the equality condition is
//! constructive, and the hypothesis report that licensed the evaluation.
//!
//! A failed hypothesis is not a violated inequality: evaluation stops with
//! [`EngineError::HypothesisUnmet`] so callers can report the distinct
//! outcome. Equality residuals are max-over-grid quantities because the
//! underlying equality conditions are pointwise.

use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::grid::GridFunction;
use crate::hypothesis::{
    self, check_complex_componentwise, check_karamata, check_pairwise, check_pointwise_e,
    HypothesisReport, HypothesisSpec, Location,
};
use crate::profile::ScalarProfile;
use crate::quadrature::{
    bochner_integral, integral_norm, integrate_samples, triangle_integral, weighted_norm_integral,
    QuadratureConfig,
};
use crate::vector::ComplexVector;

/// Positive floor for relative-gap denominators; the zero function is a
/// legal input and must not divide by zero.
pub const REL_GAP_FLOOR: f64 = 1e-300;

/// Absolute slack tolerances for hypothesis checks and inequality gaps.
/// The inequality tolerance is applied as `ineq * (1 + scale)` with
/// `scale = max(|lhs|, |rhs|)`, i.e. one absolute and one relative part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hyp: f64,
    pub ineq: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hyp: hypothesis::DEFAULT_TOL_HYP,
            ineq: 1e-8,
        }
    }
}

impl Tolerances {
    fn ineq_allowance(&self, scale: f64) -> f64 {
        self.ineq * (1.0 + scale)
    }
}

/// Inequality identifiers as they appear in reports and scenario files.
pub mod ids {
    pub const TRIANGLE: &str = "triangle";
    pub const KARAMATA: &str = "karamata";
    pub const MULTIPLICATIVE_DM: &str = "multiplicative-K";
    pub const MULTIPLICATIVE_BALL: &str = "multiplicative-ball";
    pub const MULTIPLICATIVE_BAND: &str = "multiplicative-mM";
    pub const MULTIPLICATIVE_BAND_GAP: &str = "multiplicative-mM-gap";
    pub const ADDITIVE_PROFILE: &str = "additive-k";
    pub const ADDITIVE_BALL: &str = "additive-ball";
    pub const ADDITIVE_BAND: &str = "additive-mM";
    pub const ADDITIVE_RADIUS: &str = "additive-r";
    pub const QUADRATIC_KERNEL_UPPER: &str = "quadratic-kernel-upper";
    pub const QUADRATIC_KERNEL_COARSE: &str = "quadratic-kernel-coarse";
    pub const QUADRATIC_KERNEL_LOWER: &str = "quadratic-kernel-lower";
    pub const QUADRATIC_BAND: &str = "quadratic-mM";
    pub const QUADRATIC_RATIO: &str = "quadratic-ratio";
    pub const QUADRATIC_RATIO_GAP: &str = "quadratic-ratio-gap";
    pub const WEIGHTED_SPAN: &str = "weighted-gamma";
    pub const WEIGHTED_SPAN_COROLLARY_A: &str = "weighted-gamma-corollary-a";
    pub const WEIGHTED_SPAN_COROLLARY_B: &str = "weighted-gamma-corollary-b";
    pub const COMPLEX_QUADRATIC: &str = "complex-quadratic";
    pub const COMPLEX_RATIO: &str = "complex-ratio";
    pub const COMPLEX_WEIGHTED: &str = "complex-weighted";
}

/// One evaluated inequality in `lhs <= rhs` form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative means violated.
    pub abs_gap: f64,
    /// `abs_gap / max(|rhs|, floor)`.
    pub rel_gap: f64,
    pub satisfied: bool,
    /// Distance from the constructive equality characterization, when one
    /// exists for this inequality; always nonnegative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality_residual: Option<f64>,
    /// The hypothesis check that licensed this evaluation, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<HypothesisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn make_report(
    id: &str,
    lhs: f64,
    rhs: f64,
    tols: &Tolerances,
    equality_residual: Option<f64>,
    hypothesis: Option<HypothesisReport>,
    note: Option<String>,
) -> InequalityReport {
    let abs_gap = rhs - lhs;
    let scale = lhs.abs().max(rhs.abs());
    InequalityReport {
        id: id.to_string(),
        lhs,
        rhs,
        abs_gap,
        rel_gap: abs_gap / rhs.abs().max(REL_GAP_FLOOR),
        satisfied: abs_gap >= -tols.ineq_allowance(scale),
        equality_residual,
        hypothesis,
        note,
    }
}

fn require(id: &str, report: HypothesisReport) -> Result<HypothesisReport, EngineError> {
    if report.holds {
        Ok(report)
    } else {
        Err(EngineError::HypothesisUnmet {
            id: id.to_string(),
            report,
        })
    }
}

/// `||integral f|| <= integral ||f||`; holds for every integrable `f`.
pub fn eval_triangle(
    f: &GridFunction,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<InequalityReport, EngineError> {
    let lhs = bochner_integral(f, cfg)?.norm();
    let rhs = integral_norm(f, cfg)?;
    Ok(make_report(ids::TRIANGLE, lhs, rhs, tols, None, None, None))
}

/// `cos(theta) * integral |f| <= |integral f|` for scalar `f` whose
/// argument stays inside the cone `|arg f| <= theta`.
pub fn eval_karamata(
    f: &GridFunction,
    theta: f64,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<InequalityReport, EngineError> {
    let hyp = require(ids::KARAMATA, check_karamata(f, theta, tols.hyp)?)?;
    let lhs = theta.cos() * integral_norm(f, cfg)?;
    let rhs = bochner_integral(f, cfg)?.norm();
    Ok(make_report(ids::KARAMATA, lhs, rhs, tols, None, Some(hyp), None))
}

/// Which multiplicative reverse to evaluate; each variant carries the
/// parameters of its hypothesis and fixes the constant `K`.
#[derive(Debug, Clone, PartialEq)]
pub enum MultiplicativeVariant {
    /// `||f(t)|| <= K Re<f(t), e>`; the bound uses `K` itself.
    DiazMetcalf { constant: f64 },
    /// `||f(t) - e|| <= rho`; `K = 1 / sqrt(1 - rho^2)`.
    Ball { rho: f64 },
    /// `Re<M e - f(t), f(t) - m e> >= 0`; `K = (M + m) / (2 sqrt(mM))`.
    Band { lower: f64, upper: f64 },
}

/// `integral ||f|| <= K ||integral f||` with the variant's constant.
///
/// The band variant also emits the equivalent additive-gap form with
/// coefficient `(sqrt(M) - sqrt(m))^2 / (M + m)`. The equality residual is
/// `||integral f - (1/K)(integral ||f||) e||` for every variant.
pub fn eval_multiplicative_reverse(
    f: &GridFunction,
    e: &ComplexVector,
    variant: &MultiplicativeVariant,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<Vec<InequalityReport>, EngineError> {
    let (id, spec, constant) = match variant {
        MultiplicativeVariant::DiazMetcalf { constant } => (
            ids::MULTIPLICATIVE_DM,
            HypothesisSpec::DiazMetcalf {
                constant: *constant,
                e: e.clone(),
            },
            *constant,
        ),
        MultiplicativeVariant::Ball { rho } => (
            ids::MULTIPLICATIVE_BALL,
            HypothesisSpec::BallRadius {
                rho: *rho,
                e: e.clone(),
            },
            1.0 / (1.0 - rho * rho).sqrt(),
        ),
        MultiplicativeVariant::Band { lower, upper } => (
            ids::MULTIPLICATIVE_BAND,
            HypothesisSpec::DirectionBand {
                lower: *lower,
                upper: *upper,
                e: e.clone(),
            },
            (upper + lower) / (2.0 * (upper * lower).sqrt()),
        ),
    };
    let hyp = require(id, check_pointwise_e(f, &spec, tols.hyp)?)?;
    let total_norm = integral_norm(f, cfg)?;
    let integral = bochner_integral(f, cfg)?;
    let residual = integral
        .sub(&e.scaled(total_norm / constant))?
        .norm();
    let lhs = total_norm;
    let rhs = constant * integral.norm();
    let mut out = vec![make_report(
        id,
        lhs,
        rhs,
        tols,
        Some(residual),
        Some(hyp.clone()),
        None,
    )];
    if let MultiplicativeVariant::Band { lower, upper } = variant {
        let coeff = (upper.sqrt() - lower.sqrt()).powi(2) / (upper + lower);
        out.push(make_report(
            ids::MULTIPLICATIVE_BAND_GAP,
            total_norm - integral.norm(),
            coeff * integral.norm(),
            tols,
            None,
            Some(hyp),
            None,
        ));
    }
    Ok(out)
}

/// Which additive reverse to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum AdditiveBound {
    /// `||f(t)|| - Re<f(t), e> <= k(t)` with `k >= 0` given at the nodes;
    /// bound is `integral k`.
    Profile { k: Vec<f64> },
    /// Ball hypothesis; bound is
    /// `rho^2 / (sqrt(1-rho^2)(1+sqrt(1-rho^2))) * Re<integral f, e>`.
    Ball { rho: f64 },
    /// Band hypothesis; bound is
    /// `(sqrt(M)-sqrt(m))^2 / (2 sqrt(mM)) * Re<integral f, e>`.
    Band { lower: f64, upper: f64 },
    /// `||f(t) - e|| <= r(t)` given at the nodes; bound is
    /// `(1/2) integral r^2`.
    Radius { r: Vec<f64> },
}

/// `integral ||f|| - ||integral f|| <= bound`. The left side is itself
/// nonnegative (the base inequality), which is folded into `satisfied`.
pub fn eval_additive_reverse(
    f: &GridFunction,
    e: &ComplexVector,
    bound: &AdditiveBound,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<InequalityReport, EngineError> {
    let total_norm = integral_norm(f, cfg)?;
    let integral = bochner_integral(f, cfg)?;
    let lhs = total_norm - integral.norm();
    let (id, hyp, rhs, residual) = match bound {
        AdditiveBound::Profile { k } => {
            let hyp = require(
                ids::ADDITIVE_PROFILE,
                hypothesis::check_defect_bound_values(f, e, k, tols.hyp)?,
            )?;
            let k_total = integrate_samples(cfg, f.step(), k)?;
            // equality needs integral f = (integral ||f|| - integral k) e
            // together with integral ||f|| >= integral k
            let vector_defect = integral.sub(&e.scaled(total_norm - k_total))?.norm();
            let shortfall = (k_total - total_norm).max(0.0);
            (
                ids::ADDITIVE_PROFILE,
                hyp,
                k_total,
                Some(vector_defect.max(shortfall)),
            )
        }
        AdditiveBound::Ball { rho } => {
            let spec = HypothesisSpec::BallRadius {
                rho: *rho,
                e: e.clone(),
            };
            let hyp = require(ids::ADDITIVE_BALL, check_pointwise_e(f, &spec, tols.hyp)?)?;
            let root = (1.0 - rho * rho).sqrt();
            let coeff = rho * rho / (root * (1.0 + root));
            (
                ids::ADDITIVE_BALL,
                hyp,
                coeff * integral.re_inner(e)?,
                None,
            )
        }
        AdditiveBound::Band { lower, upper } => {
            let spec = HypothesisSpec::DirectionBand {
                lower: *lower,
                upper: *upper,
                e: e.clone(),
            };
            let hyp = require(ids::ADDITIVE_BAND, check_pointwise_e(f, &spec, tols.hyp)?)?;
            let coeff =
                (upper.sqrt() - lower.sqrt()).powi(2) / (2.0 * (upper * lower).sqrt());
            (
                ids::ADDITIVE_BAND,
                hyp,
                coeff * integral.re_inner(e)?,
                None,
            )
        }
        AdditiveBound::Radius { r } => {
            let hyp = require(
                ids::ADDITIVE_RADIUS,
                hypothesis::check_radius_bound_values(f, e, r, tols.hyp)?,
            )?;
            let squares: Vec<f64> = r.iter().map(|x| x * x).collect();
            (
                ids::ADDITIVE_RADIUS,
                hyp,
                0.5 * integrate_samples(cfg, f.step(), &squares)?,
                None,
            )
        }
    };
    let mut report = make_report(id, lhs, rhs, tols, residual, Some(hyp), None);
    report.satisfied = report.satisfied && lhs >= -tols.ineq_allowance(lhs.abs());
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelMode {
    /// Kernel dominates the Schwarz gap; bounds the squared defect above.
    Upper,
    /// Kernel is squeezed between 0 and the Schwarz gap; refines the
    /// squared triangle inequality from below.
    Lower,
}

/// Quadratic kernel bound. In upper mode:
/// `(integral ||f||)^2 <= ||integral f||^2 + 2 * (triangle integral of k)`,
/// plus the coarser report
/// `integral ||f|| - ||integral f|| <= sqrt(2) (triangle integral of k)^{1/2}`.
/// In lower mode the two sides swap and the triangle integral must itself
/// be nonnegative.
///
/// The domination precondition (`k >= gap` pairwise, or `0 <= k <= gap`)
/// is verified on every ordered node pair before any integral is taken.
pub fn eval_quadratic_kernel<K>(
    f: &GridFunction,
    kernel: K,
    mode: KernelMode,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<Vec<InequalityReport>, EngineError>
where
    K: Fn(usize, usize, f64, f64) -> f64,
{
    let id = match mode {
        KernelMode::Upper => ids::QUADRATIC_KERNEL_UPPER,
        KernelMode::Lower => ids::QUADRATIC_KERNEL_LOWER,
    };
    let values = f.values();
    let n = f.segments();
    let norms: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    let mut worst = f64::INFINITY;
    let mut worst_pair = (0usize, 0usize);
    for i in 0..=n {
        for j in i..=n {
            let gap = norms[i] * norms[j] - values[i].re_inner(&values[j])?;
            let k = kernel(i, j, f.node(i), f.node(j));
            let slack = match mode {
                KernelMode::Upper => k - gap,
                KernelMode::Lower => k.min(gap - k),
            };
            if slack < worst {
                worst = slack;
                worst_pair = (i, j);
            }
        }
    }
    let hyp = require(
        id,
        HypothesisReport {
            holds: worst >= -tols.hyp,
            worst_margin: worst,
            worst_location: Location::Pair(worst_pair.0, worst_pair.1),
        },
    )?;
    let double = triangle_integral(f, cfg, kernel)?;
    let total_norm_sq = integral_norm(f, cfg)?.powi(2);
    let integral_sq = bochner_integral(f, cfg)?.norm_sq();
    match mode {
        KernelMode::Upper => {
            let primary = make_report(
                id,
                total_norm_sq,
                integral_sq + 2.0 * double,
                tols,
                None,
                Some(hyp.clone()),
                None,
            );
            let coarse = make_report(
                ids::QUADRATIC_KERNEL_COARSE,
                total_norm_sq.sqrt() - integral_sq.sqrt(),
                std::f64::consts::SQRT_2 * double.max(0.0).sqrt(),
                tols,
                None,
                Some(hyp),
                None,
            );
            Ok(vec![primary, coarse])
        }
        KernelMode::Lower => {
            let mut report = make_report(
                id,
                integral_sq + 2.0 * double,
                total_norm_sq,
                tols,
                None,
                Some(hyp),
                None,
            );
            report.satisfied =
                report.satisfied && double >= -tols.ineq_allowance(double.abs());
            Ok(vec![report])
        }
    }
}

/// Shared pieces of the band-hypothesis quadratic bounds.
fn band_gap_residual(f: &GridFunction, coeff: f64) -> Result<f64, EngineError> {
    // max over pairs of |gap(t, s) - coeff * ||f(s)||^2|
    let values = f.values();
    let n = f.segments();
    let norms: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    let mut worst: f64 = 0.0;
    for i in 0..=n {
        for j in i..=n {
            let gap = norms[i] * norms[j] - values[i].re_inner(&values[j])?;
            worst = worst.max((gap - coeff * norms[j] * norms[j]).abs());
        }
    }
    Ok(worst)
}

fn quadratic_band_parts(
    f: &GridFunction,
    lower: f64,
    upper: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64, f64), EngineError> {
    let lhs = integral_norm(f, cfg)?.powi(2);
    let a = f.a();
    let weighted = weighted_norm_integral(f, cfg, |s| s - a)?;
    let coeff = 0.5 * (upper - lower).powi(2) / (upper + lower);
    let rhs = bochner_integral(f, cfg)?.norm_sq() + coeff * weighted;
    let residual = band_gap_residual(f, 0.5 * coeff)?;
    Ok((lhs, rhs, residual))
}

/// `(integral ||f||)^2 <= ||integral f||^2 +
/// (1/2) (M-m)^2/(M+m) integral (s-a) ||f(s)||^2 ds` under the pairwise
/// band hypothesis `M >= 1 >= m >= 0`. The equality residual measures the
/// pointwise condition `gap = (1/4)(M-m)^2/(M+m) ||f(s)||^2`.
pub fn eval_quadratic_band(
    f: &GridFunction,
    lower: f64,
    upper: f64,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<InequalityReport, EngineError> {
    let spec = HypothesisSpec::PairwiseBand { lower, upper };
    let hyp = require(ids::QUADRATIC_BAND, check_pairwise(f, &spec, tols.hyp)?)?;
    let (lhs, rhs, residual) = quadratic_band_parts(f, lower, upper, cfg)?;
    Ok(make_report(
        ids::QUADRATIC_BAND,
        lhs,
        rhs,
        tols,
        Some(residual),
        Some(hyp),
        None,
    ))
}

fn ratio_parts(
    f: &GridFunction,
    lower: f64,
    upper: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64, f64, f64, f64), EngineError> {
    let factor_sq = (upper + lower) / (2.0 * (upper * lower).sqrt());
    let total_norm = integral_norm(f, cfg)?;
    let integral_norm_val = bochner_integral(f, cfg)?.norm();
    let lhs = total_norm;
    let rhs = factor_sq.sqrt() * integral_norm_val;
    // max over pairs of |  ||f(t)|| ||f(s)|| - factor^2 Re<f(t), f(s)> |
    let values = f.values();
    let n = f.segments();
    let norms: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    let mut residual: f64 = 0.0;
    for i in 0..=n {
        for j in i..=n {
            let r = values[i].re_inner(&values[j])?;
            residual = residual.max((norms[i] * norms[j] - factor_sq * r).abs());
        }
    }
    let gap_lhs = total_norm * total_norm - integral_norm_val * integral_norm_val;
    let gap_rhs = (upper.sqrt() - lower.sqrt()).powi(2) / (2.0 * (upper * lower).sqrt())
        * integral_norm_val
        * integral_norm_val;
    Ok((lhs, rhs, residual, gap_lhs, gap_rhs))
}

/// Ratio form `integral ||f|| <= ((M+m)/(2 sqrt(Mm)))^{1/2} ||integral f||`
/// plus the equivalent squared-gap form, under the same band hypothesis.
/// Requires `m > 0`.
pub fn eval_quadratic_ratio(
    f: &GridFunction,
    lower: f64,
    upper: f64,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<Vec<InequalityReport>, EngineError> {
    if lower <= 0.0 {
        return Err(EngineError::Input(format!(
            "the ratio bound needs m > 0 (got m = {lower})"
        )));
    }
    let spec = HypothesisSpec::PairwiseBand { lower, upper };
    let hyp = require(ids::QUADRATIC_RATIO, check_pairwise(f, &spec, tols.hyp)?)?;
    let (lhs, rhs, residual, gap_lhs, gap_rhs) = ratio_parts(f, lower, upper, cfg)?;
    Ok(vec![
        make_report(
            ids::QUADRATIC_RATIO,
            lhs,
            rhs,
            tols,
            Some(residual),
            Some(hyp.clone()),
            None,
        ),
        make_report(
            ids::QUADRATIC_RATIO_GAP,
            gap_lhs,
            gap_rhs,
            tols,
            None,
            Some(hyp),
            None,
        ),
    ])
}

fn weighted_parts(
    f: &GridFunction,
    lower: f64,
    upper: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64, f64), EngineError> {
    let (a, b) = (f.a(), f.b());
    let product = lower * upper;
    let lhs = weighted_norm_integral(f, cfg, |s| (b - s) + product * (s - a))?;
    let rhs = 0.5 * (upper + lower) * bochner_integral(f, cfg)?.norm_sq();
    // residual: worst absolute slack of the expanded pairwise condition
    let values = f.values();
    let n = f.segments();
    let mut residual: f64 = 0.0;
    for i in 0..=n {
        for j in i..=n {
            let r = values[i].re_inner(&values[j])?;
            let slack = (upper + lower) * r
                - values[i].norm_sq()
                - product * values[j].norm_sq();
            residual = residual.max(slack.abs());
        }
    }
    Ok((lhs, rhs, residual))
}

/// Weighted bound
/// `integral [(b-s) + gamma Gamma (s-a)] ||f(s)||^2 ds <=
/// ((Gamma+gamma)/2) ||integral f||^2` under the pairwise span hypothesis.
///
/// When `gamma Gamma >= 1` (resp. `0 < gamma Gamma < 1`) the corresponding
/// lower bound on `(b-a) integral ||f||^2` is emitted as a companion
/// report. Requires `Gamma + gamma > 0`.
pub fn eval_weighted_span(
    f: &GridFunction,
    lower: f64,
    upper: f64,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<Vec<InequalityReport>, EngineError> {
    if !(lower + upper > 0.0) {
        return Err(EngineError::Input(format!(
            "the weighted bound needs gamma + Gamma > 0 (got {lower} + {upper})"
        )));
    }
    let spec = HypothesisSpec::PairwiseSpan { lower, upper };
    let hyp = require(ids::WEIGHTED_SPAN, check_pairwise(f, &spec, tols.hyp)?)?;
    let (lhs, rhs, residual) = weighted_parts(f, lower, upper, cfg)?;
    let mut out = vec![make_report(
        ids::WEIGHTED_SPAN,
        lhs,
        rhs,
        tols,
        Some(residual),
        Some(hyp.clone()),
        None,
    )];
    let product = lower * upper;
    let norm_sq_total = weighted_norm_integral(f, cfg, |_| 1.0)?;
    let width = f.b() - f.a();
    if product >= 1.0 {
        out.push(make_report(
            ids::WEIGHTED_SPAN_COROLLARY_A,
            width * norm_sq_total,
            rhs,
            tols,
            None,
            Some(hyp),
            None,
        ));
    } else if product > 0.0 {
        out.push(make_report(
            ids::WEIGHTED_SPAN_COROLLARY_B,
            product * width * norm_sq_total,
            rhs,
            tols,
            None,
            Some(hyp),
            None,
        ));
    }
    Ok(out)
}

/// The scalar-valued suite: quadratic band, ratio, and weighted bounds on
/// `|.|`, licensed by the componentwise sufficient condition. The weighted
/// member adopts `gamma := m`, `Gamma := M`, which the report notes.
pub fn eval_complex_suite(
    f: &GridFunction,
    lower: f64,
    upper: f64,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<Vec<InequalityReport>, EngineError> {
    if f.dim() != 1 {
        return Err(EngineError::Input(format!(
            "the scalar suite needs dim 1 samples (got dim {})",
            f.dim()
        )));
    }
    if lower <= 0.0 {
        return Err(EngineError::Input(format!(
            "the scalar suite needs m > 0 (got m = {lower})"
        )));
    }
    let hyp = require(
        ids::COMPLEX_QUADRATIC,
        check_complex_componentwise(f, lower, upper, tols.hyp)?,
    )?;
    let (q_lhs, q_rhs, q_res) = quadratic_band_parts(f, lower, upper, cfg)?;
    let (r_lhs, r_rhs, r_res, _, _) = ratio_parts(f, lower, upper, cfg)?;
    let (w_lhs, w_rhs, w_res) = weighted_parts(f, lower, upper, cfg)?;
    Ok(vec![
        make_report(
            ids::COMPLEX_QUADRATIC,
            q_lhs,
            q_rhs,
            tols,
            Some(q_res),
            Some(hyp.clone()),
            None,
        ),
        make_report(
            ids::COMPLEX_RATIO,
            r_lhs,
            r_rhs,
            tols,
            Some(r_res),
            Some(hyp.clone()),
            None,
        ),
        make_report(
            ids::COMPLEX_WEIGHTED,
            w_lhs,
            w_rhs,
            tols,
            Some(w_res),
            Some(hyp),
            Some("weighted bound evaluated with gamma := m, Gamma := M".to_string()),
        ),
    ])
}

/// Declarative pair kernels for scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum KernelSpec {
    /// `||f(t)|| ||f(s)|| - Re<f(t), f(s)>` from the stored samples.
    SchwarzGap,
    /// `factor` times the Schwarz gap.
    ScaledSchwarzGap { factor: f64 },
    Constant { value: f64 },
    /// `1 - cos(s - t)`.
    CosineDifferenceGap,
}

impl KernelSpec {
    /// Bind the kernel to a grid's stored samples.
    pub fn materialize<'a>(
        &self,
        f: &'a GridFunction,
    ) -> Box<dyn Fn(usize, usize, f64, f64) -> f64 + 'a> {
        match self {
            Self::SchwarzGap => Box::new(move |i, j, _, _| schwarz_gap(f, i, j)),
            Self::ScaledSchwarzGap { factor } => {
                let factor = *factor;
                Box::new(move |i, j, _, _| factor * schwarz_gap(f, i, j))
            }
            Self::Constant { value } => {
                let value = *value;
                Box::new(move |_, _, _, _| value)
            }
            Self::CosineDifferenceGap => Box::new(|_, _, t, s| 1.0 - (s - t).cos()),
        }
    }
}

fn schwarz_gap(f: &GridFunction, i: usize, j: usize) -> f64 {
    let x = f.value(i);
    let y = f.value(j);
    x.norm() * y.norm()
        - x.re_inner(y)
            .expect("grid values share one dimension")
}

/// Declarative inequality entry: an id plus its parameters. This is the
/// form scenario files and the search target use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", deny_unknown_fields)]
pub enum InequalitySpec {
    #[serde(rename = "triangle")]
    Triangle,
    #[serde(rename = "karamata")]
    Karamata { theta: f64 },
    #[serde(rename = "multiplicative-K")]
    MultiplicativeDiazMetcalf {
        #[serde(rename = "K")]
        constant: f64,
    },
    #[serde(rename = "multiplicative-ball")]
    MultiplicativeBall { rho: f64 },
    #[serde(rename = "multiplicative-mM")]
    MultiplicativeBand {
        #[serde(rename = "m")]
        lower: f64,
        #[serde(rename = "M")]
        upper: f64,
    },
    #[serde(rename = "additive-k")]
    AdditiveProfile { k: ScalarProfile },
    #[serde(rename = "additive-ball")]
    AdditiveBall { rho: f64 },
    #[serde(rename = "additive-mM")]
    AdditiveBand {
        #[serde(rename = "m")]
        lower: f64,
        #[serde(rename = "M")]
        upper: f64,
    },
    #[serde(rename = "additive-r")]
    AdditiveRadius { r: ScalarProfile },
    #[serde(rename = "quadratic-kernel")]
    QuadraticKernel { kernel: KernelSpec, mode: KernelMode },
    #[serde(rename = "quadratic-mM")]
    QuadraticBand {
        #[serde(rename = "m")]
        lower: f64,
        #[serde(rename = "M")]
        upper: f64,
    },
    #[serde(rename = "quadratic-ratio")]
    QuadraticRatio {
        #[serde(rename = "m")]
        lower: f64,
        #[serde(rename = "M")]
        upper: f64,
    },
    #[serde(rename = "weighted-gamma")]
    WeightedSpan {
        #[serde(rename = "gamma")]
        lower: f64,
        #[serde(rename = "Gamma")]
        upper: f64,
    },
    #[serde(rename = "complex-suite")]
    ComplexSuite {
        #[serde(rename = "m")]
        lower: f64,
        #[serde(rename = "M")]
        upper: f64,
    },
}

impl InequalitySpec {
    /// Evaluate against a grid function; `e` is the reference direction
    /// for the bounds that need one (typically the family's unit vector).
    /// Returns the primary report first, companions after it.
    pub fn evaluate(
        &self,
        f: &GridFunction,
        e: &ComplexVector,
        cfg: &QuadratureConfig,
        tols: &Tolerances,
    ) -> Result<Vec<InequalityReport>, EngineError> {
        match self {
            Self::Triangle => Ok(vec![eval_triangle(f, cfg, tols)?]),
            Self::Karamata { theta } => Ok(vec![eval_karamata(f, *theta, cfg, tols)?]),
            Self::MultiplicativeDiazMetcalf { constant } => eval_multiplicative_reverse(
                f,
                e,
                &MultiplicativeVariant::DiazMetcalf {
                    constant: *constant,
                },
                cfg,
                tols,
            ),
            Self::MultiplicativeBall { rho } => eval_multiplicative_reverse(
                f,
                e,
                &MultiplicativeVariant::Ball { rho: *rho },
                cfg,
                tols,
            ),
            Self::MultiplicativeBand { lower, upper } => eval_multiplicative_reverse(
                f,
                e,
                &MultiplicativeVariant::Band {
                    lower: *lower,
                    upper: *upper,
                },
                cfg,
                tols,
            ),
            Self::AdditiveProfile { k } => {
                let samples = k.sample(f.a(), f.b(), f.segments());
                Ok(vec![eval_additive_reverse(
                    f,
                    e,
                    &AdditiveBound::Profile { k: samples },
                    cfg,
                    tols,
                )?])
            }
            Self::AdditiveBall { rho } => Ok(vec![eval_additive_reverse(
                f,
                e,
                &AdditiveBound::Ball { rho: *rho },
                cfg,
                tols,
            )?]),
            Self::AdditiveBand { lower, upper } => Ok(vec![eval_additive_reverse(
                f,
                e,
                &AdditiveBound::Band {
                    lower: *lower,
                    upper: *upper,
                },
                cfg,
                tols,
            )?]),
            Self::AdditiveRadius { r } => {
                let samples = r.sample(f.a(), f.b(), f.segments());
                Ok(vec![eval_additive_reverse(
                    f,
                    e,
                    &AdditiveBound::Radius { r: samples },
                    cfg,
                    tols,
                )?])
            }
            Self::QuadraticKernel { kernel, mode } => {
                let k = kernel.materialize(f);
                eval_quadratic_kernel(f, k.as_ref(), *mode, cfg, tols)
            }
            Self::QuadraticBand { lower, upper } => {
                Ok(vec![eval_quadratic_band(f, *lower, *upper, cfg, tols)?])
            }
            Self::QuadraticRatio { lower, upper } => {
                eval_quadratic_ratio(f, *lower, *upper, cfg, tols)
            }
            Self::WeightedSpan { lower, upper } => {
                eval_weighted_span(f, *lower, *upper, cfg, tols)
            }
            Self::ComplexSuite { lower, upper } => {
                eval_complex_suite(f, *lower, *upper, cfg, tols)
            }
        }
    }

    /// Identifier this entry reports under (the primary report's id).
    pub fn id(&self) -> &'static str {
        match self {
            Self::Triangle => ids::TRIANGLE,
            Self::Karamata { .. } => ids::KARAMATA,
            Self::MultiplicativeDiazMetcalf { .. } => ids::MULTIPLICATIVE_DM,
            Self::MultiplicativeBall { .. } => ids::MULTIPLICATIVE_BALL,
            Self::MultiplicativeBand { .. } => ids::MULTIPLICATIVE_BAND,
            Self::AdditiveProfile { .. } => ids::ADDITIVE_PROFILE,
            Self::AdditiveBall { .. } => ids::ADDITIVE_BALL,
            Self::AdditiveBand { .. } => ids::ADDITIVE_BAND,
            Self::AdditiveRadius { .. } => ids::ADDITIVE_RADIUS,
            Self::QuadraticKernel { mode, .. } => match mode {
                KernelMode::Upper => ids::QUADRATIC_KERNEL_UPPER,
                KernelMode::Lower => ids::QUADRATIC_KERNEL_LOWER,
            },
            Self::QuadraticBand { .. } => ids::QUADRATIC_BAND,
            Self::QuadraticRatio { .. } => ids::QUADRATIC_RATIO,
            Self::WeightedSpan { .. } => ids::WEIGHTED_SPAN,
            Self::ComplexSuite { .. } => ids::COMPLEX_QUADRATIC,
        }
    }

    /// Bind a named parameter if this entry carries it; returns whether
    /// anything changed. Sweeps and the search use this to keep family and
    /// inequality parameters that share a name in step.
    pub fn set_param(&mut self, name: &str, value: f64) -> bool {
        match (self, name) {
            (Self::Karamata { theta }, "theta") => {
                *theta = value;
                true
            }
            (Self::MultiplicativeDiazMetcalf { constant }, "K") => {
                *constant = value;
                true
            }
            (Self::MultiplicativeBall { rho }, "rho")
            | (Self::AdditiveBall { rho }, "rho") => {
                *rho = value;
                true
            }
            (Self::MultiplicativeBand { lower, .. }, "m")
            | (Self::AdditiveBand { lower, .. }, "m")
            | (Self::QuadraticBand { lower, .. }, "m")
            | (Self::QuadraticRatio { lower, .. }, "m")
            | (Self::ComplexSuite { lower, .. }, "m") => {
                *lower = value;
                true
            }
            (Self::MultiplicativeBand { upper, .. }, "M")
            | (Self::AdditiveBand { upper, .. }, "M")
            | (Self::QuadraticBand { upper, .. }, "M")
            | (Self::QuadraticRatio { upper, .. }, "M")
            | (Self::ComplexSuite { upper, .. }, "M") => {
                *upper = value;
                true
            }
            (Self::WeightedSpan { lower, .. }, "gamma") => {
                *lower = value;
                true
            }
            (Self::WeightedSpan { upper, .. }, "Gamma") => {
                *upper = value;
                true
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::Scalar;
    use proptest::prelude::*;
    use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, LN_2, PI, SQRT_2};

    fn e2() -> ComplexVector {
        ComplexVector::from_real(&[1.0, 0.0]).unwrap()
    }

    fn u2() -> ComplexVector {
        ComplexVector::from_real(&[0.0, 1.0]).unwrap()
    }

    fn one() -> ComplexVector {
        ComplexVector::from_real(&[1.0]).unwrap()
    }

    fn constant(v: &ComplexVector, a: f64, b: f64, n: usize) -> GridFunction {
        GridFunction::sample(a, b, n, |_| Ok(v.clone())).unwrap()
    }

    fn circle2(a: f64, b: f64, n: usize) -> GridFunction {
        GridFunction::sample(a, b, n, |t| {
            Ok(ComplexVector::from_real(&[t.cos(), t.sin()]).unwrap())
        })
        .unwrap()
    }

    fn unit_circle_scalar(a: f64, b: f64, n: usize) -> GridFunction {
        GridFunction::sample(a, b, n, |t| {
            Ok(ComplexVector::new(vec![Scalar::new(t.cos(), t.sin())]).unwrap())
        })
        .unwrap()
    }

    fn cfg(n: usize) -> QuadratureConfig {
        QuadratureConfig::simpson(n).unwrap()
    }

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn triangle_constant_is_equality() {
        let f = constant(&e2(), 0.0, 1.0, 8);
        let rep = eval_triangle(&f, &cfg(8), &tols()).unwrap();
        assert!(rep.satisfied);
        assert!((rep.lhs - 1.0).abs() < 1e-14);
        assert!((rep.rhs - 1.0).abs() < 1e-14);
        assert!(rep.rel_gap.abs() < 1e-14);
    }

    #[test]
    fn triangle_circle_closed_form() {
        let f = circle2(0.0, FRAC_PI_2, 256);
        let rep = eval_triangle(&f, &cfg(256), &tols()).unwrap();
        assert!(rep.satisfied);
        assert!((rep.lhs - SQRT_2).abs() < 1e-9, "lhs {}", rep.lhs);
        assert!((rep.rhs - FRAC_PI_2).abs() < 1e-9, "rhs {}", rep.rhs);
    }

    #[test]
    fn triangle_cancellation() {
        // +e on the left half, -e on the right, 0 at the jump node
        let f = GridFunction::sample(0.0, 1.0, 256, |t| {
            Ok(if t < 0.5 {
                e2()
            } else if t > 0.5 {
                e2().scaled(-1.0)
            } else {
                ComplexVector::zero(2).unwrap()
            })
        })
        .unwrap();
        let rep = eval_triangle(&f, &cfg(256), &tols()).unwrap();
        assert!(rep.satisfied);
        assert!(rep.lhs.abs() < 1e-12);
        assert!((rep.rhs - 1.0).abs() < 0.01);
    }

    #[test]
    fn karamata_constant_one() {
        let f = constant(&one(), 0.0, 1.0, 8);
        let rep = eval_karamata(&f, FRAC_PI_4, &cfg(8), &tols()).unwrap();
        assert!(rep.satisfied);
        assert!((rep.lhs - SQRT_2 / 2.0).abs() < 1e-12);
        assert!((rep.rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn karamata_circle_closed_form() {
        // lhs = cos(pi/4) * (pi/2), rhs = 2 sin(pi/4) = sqrt(2)
        let f = unit_circle_scalar(-FRAC_PI_4, FRAC_PI_4, 256);
        let rep = eval_karamata(&f, FRAC_PI_4, &cfg(256), &tols()).unwrap();
        assert!(rep.satisfied);
        assert!((rep.lhs - SQRT_2 / 2.0 * FRAC_PI_2).abs() < 1e-6);
        assert!((rep.rhs - SQRT_2).abs() < 1e-6);
        assert!((rep.lhs - 1.110721).abs() < 1e-6);
        assert!((rep.rhs - 1.414214).abs() < 1e-6);
    }

    #[test]
    fn karamata_gap_shrinks_with_theta() {
        let wide = {
            let f = unit_circle_scalar(-FRAC_PI_4, FRAC_PI_4, 128);
            eval_karamata(&f, FRAC_PI_4, &cfg(128), &tols()).unwrap()
        };
        let narrow = {
            let f = unit_circle_scalar(-0.05, 0.05, 128);
            eval_karamata(&f, 0.05, &cfg(128), &tols()).unwr
ap()
        };
        // rel_gap ~ theta^2 / 3 for small theta
        assert!(narrow.rel_gap < 1e-3);
        assert!(narrow.rel_gap < wide.rel_gap);
    }

    #[test]
    fn karamata_hypothesis_unmet() {
        let f = unit_circle_scalar(-FRAC_PI_2, FRAC_PI_2, 64);
        let err = eval_karamata(&f, FRAC_PI_4, &cfg(64), &tols());
        assert!(matches!(err, Err(EngineError::HypothesisUnmet { .. })));
    }

    #[test]
    fn multiplicative_unit_constant_is_equality() {
        let f = constant(&e2(), 0.0, 1.0, 8);
        let reps = eval_multiplicative_reverse(
            &f,
            &e2(),
            &MultiplicativeVariant::DiazMetcalf { constant: 1.0 },
            &cfg(8),
            &tols(),
        )
        .unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].satisfied);
        assert!(reps[0].rel_gap.abs() <= 1e-12);
        assert!(reps[0].equality_residual.unwrap() <= 1e-12);
    }

    #[test]
    fn multiplicative_ball_family_holds() {
        // f(t) = e + 0.6 cos(t) u on [0, pi]: sqrt(1 - rho^2) = 0.8
        let f = GridFunction::sample(0.0, PI, 256, |t| {
            Ok(e2().add(&u2().scaled(0.6 * t.cos())).unwrap())
        })
        .unwrap();
        let reps = eval_multiplicative_reverse(
            &f,
            &e2(),
            &MultiplicativeVariant::Ball { rho: 0.6 },
            &cfg(256),
            &tols(),
        )
        .unwrap();
        assert!(reps[0].satisfied);
        // 0.8 * integral ||f|| <= ||integral f||, i.e. lhs <= 1.25 rhs_norm
        assert!((reps[0].rhs / reps[0].lhs) >= 1.0);
    }

    #[test]
    fn multiplicative_band_constants() {
        // f == e with m = 1, M = 4: K = 5/4, gap coefficient 0.2
        let f = constant(&e2(), 0.0, 1.0, 8);
        let reps = eval_multiplicative_reverse(
            &f,
            &e2(),
            &MultiplicativeVariant::Band {
                lower: 1.0,
                upper: 4.0,
            },
            &cfg(8),
            &tols(),
        )
        .unwrap();
        assert_eq!(reps.len(), 2);
        assert!((reps[0].rhs - 1.25).abs() < 1e-12);
        assert!((reps[0].lhs - 1.0).abs() < 1e-12);
        // residual: || integral f - 0.8 (integral ||f||) e || = 0.2
        assert!((reps[0].equality_residual.unwrap() - 0.2).abs() < 1e-12);
        assert_eq!(reps[1].id, ids::MULTIPLICATIVE_BAND_GAP);
        assert!(reps[1].lhs.abs() < 1e-12);
        assert!((reps[1].rhs - 0.2).abs() < 1e-12);
    }

    #[test]
    fn additive_zero_bound_is_equality() {
        let f = constant(&e2(), 0.0, 1.0, 8);
        let rep = eval_additive_reverse(
            &f,
            &e2(),
            &AdditiveBound::Profile { k: vec![0.0; 9] },
            &cfg(8),
            &tols(),
        )
        .unwrap();
        assert!(rep.satisfied);
        assert!(rep.lhs.abs() < 1e-12);
        assert!(rep.rhs.abs() < 1e-12);
        assert!(rep.equality_residual.unwrap() < 1e-12);
    }

    #[test]
    fn additive_ball_coefficient() {
        // rho = 0.6: rho^2 / (sqrt(1-rho^2)(1+sqrt(1-rho^2))) = 0.25
        let f = GridFunction::sample(0.0, PI, 256, |t| {
            Ok(e2().add(&u2().scaled(0.6 * t.cos())).unwrap())
        })
        .unwrap();
        let rep = eval_additive_reverse(
            &f,
            &e2(),
            &AdditiveBound::Ball { rho: 0.6 },
            &cfg(256),
            &tols(),
        )
        .unwrap();
        assert!(rep.satisfied);
        // Re<integral f, e> = pi, so rhs = 0.25 pi
        assert!((rep.rhs - 0.25 * PI).abs() < 1e-9, "rhs {}", rep.rhs);
    }

    #[test]
    fn additive_radius_constant() {
        // r == 0.6 on [0, 1]: rhs = 0.18
        let f = constant(&e2(), 0.0, 1.0, 8);
        let rep = eval_additive_reverse(
            &f,
            &e2(),
            &AdditiveBound::Radius { r: vec![0.6; 9] },
            &cfg(8),
            &tols(),
        )
        .unwrap();
        assert!(rep.satisfied);
        assert!((rep.rhs - 0.18).abs() < 1e-12);
    }

    #[test]
    fn quadratic_kernel_zero_on_constant() {
        let f = constant(&e2(), 0.0, 2.0, 16);
        let qc = QuadratureConfig::trapezoid(16).unwrap();
        for mode in [KernelMode::Upper, KernelMode::Lower] {
            let reps =
                eval_quadratic_kernel(&f, |_, _, _, _| 0.0, mode, &qc, &tols()).unwrap();
            assert!(reps[0].satisfied, "{mode:?}");
            assert!((reps[0].lhs - 4.0).abs() < 1e-12);
            assert!((reps[0].rhs - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn quadratic_kernel_exact_gap_is_identity() {
        // k = the Schwarz gap itself: equality in the quadratic bound
        let f = circle2(0.0, FRAC_PI_2, 256);
        let qc = QuadratureConfig::trapezoid(256).unwrap();
        let spec = KernelSpec::SchwarzGap;
        let k = spec.materialize(&f);
        let reps =
            eval_quadratic_kernel(&f, k.as_ref(), KernelMode::Upper, &qc, &tols()).unwrap();
        assert!(reps[0].satisfied);
        let scale = reps[0].lhs.abs().max(1.0);
        assert!(
            (reps[0].lhs - reps[0].rhs).abs() <= 1e-6 * scale,
            "gap {}",
            reps[0].abs_gap
        );
        // coarse companion also holds
        assert_eq!(reps[1].id, ids::QUADRATIC_KERNEL_COARSE);
        assert!(reps[1].satisfied);
    }

    #[test]
    fn quadratic_kernel_circle_closed_form() {
        // on the unit circle the Schwarz gap is exactly 1 - cos(s - t)
        let f = circle2(0.0, FRAC_PI_2, 256);
        let qc = QuadratureConfig::trapezoid(256).unwrap();
        let reps = eval_quadratic_kernel(
            &f,
            |_, _, t, s| 1.0 - (s - t).cos(),
            KernelMode::Upper,
            &qc,
            &tols(),
        )
        .unwrap();
        // (pi/2)^2 = 2 + 2 (pi^2/8 - 1), so lhs = rhs up to rounding
        assert!((reps[0].lhs - FRAC_PI_2 * FRAC_PI_2).abs() < 1e-10);
        assert!((reps[0].lhs - reps[0].rhs).abs() < 1e-9);
    }

    #[test]
    fn quadratic_kernel_domination_failure() {
        let f = circle2(0.0, FRAC_PI_2, 64);
        let qc = QuadratureConfig::trapezoid(64).unwrap();
        // zero kernel does not dominate the gap of a moving function
        let err = eval_quadratic_kernel(&f, |_, _, _, _| 0.0, KernelMode::Upper, &qc, &tols());
        match err {
            Err(EngineError::HypothesisUnmet { report, .. }) => {
                assert!(matches!(report.worst_location, Location::Pair(_, _)));
            }
            other => panic!("expected hypothesis unmet, got {other:?}"),
        }
    }

    #[test]
    fn quadratic_kernel_lower_refinement_chain() {
        // k = half the gap: ||I f||^2 <= ||I f||^2 + 2 II k <= (I ||f||)^2
        let f = circle2(0.0, FRAC_PI_2, 128);
        let qc = QuadratureConfig::trapezoid(128).unwrap();
        let spec = KernelSpec::ScaledSchwarzGap { factor: 0.5 };
        let k = spec.materialize(&f);
        let reps =
            eval_quadratic_kernel(&f, k.as_ref(), KernelMode::Lower, &qc, &tols()).unwrap();
        assert!(reps[0].satisfied);
        let integral_sq = crate::quadrature::bochner_integral(&f, &qc).unwrap().norm_sq();
        assert!(integral_sq <= reps[0].lhs + 1e-12);
        assert!(reps[0].lhs <= reps[0].rhs + 1e-12);
    }

    #[test]
    fn quadratic_band_trivial_equality() {
        let f = constant(&e2(), 0.0, 1.0, 8);
        let rep = eval_quadratic_band(&f, 1.0, 1.0, &cfg(8), &tols()).unwrap();
        assert!(rep.satisfied);
        assert!((rep.lhs - rep.rhs).abs() < 1e-12);
        assert!(rep.equality_residual.unwrap() < 1e-12);
    }

    #[test]
    fn quadratic_band_exponential_closed_form() {
        let f = GridFunction::sample_real(0.0, LN_2, 256, |t| (-t).exp()).unwrap();
        let rep = eval_quadratic_band(&f, 1.0, 2.0, &cfg(256), &tols()).unwrap();
        assert!(rep.satisfied);
        // lhs = (1 - 1/2)^2; rhs = 1/4 + (1/6)(3/16 - ln2/8)
        assert!((rep.lhs - 0.25).abs() < 1e-9, "lhs {}", rep.lhs);
        let expected_rhs = 0.25 + (3.0 / 16.0 - LN_2 / 8.0) / 6.0;
        assert!((rep.rhs - expected_rhs).abs() < 1e-9, "rhs {}", rep.rhs);
    }

    #[test]
    fn quadratic_band_hypothesis_unmet() {
        let f = GridFunction::sample(0.0, 1.0, 32, |t| {
            Ok(ComplexVector::from_real(&[1.0, t]).unwrap())
        })
        .unwrap();
        let err = eval_quadratic_band(&f, 1.0, 1.0, &cfg(32), &tols());
        assert!(matches!(err, Err(EngineError::HypothesisUnmet { .. })));
    }

    #[test]
    fn quadratic_ratio_trivial_equality() {
        let f = constant(&e2(), 0.0, 1.0, 8);
        let reps = eval_quadratic_ratio(&f, 1.0, 1.0, &cfg(8), &tols()).unwrap();
        assert!(reps[0].satisfied);
        assert!(reps[0].rel_gap.abs() < 1e-12);
        assert!(reps[0].equality_residual.unwrap() < 1e-12);
        assert_eq!(reps[1].id, ids::QUADRATIC_RATIO_GAP);
    }

    #[test]
    fn quadratic_ratio_exponential_closed_form() {
        let f = GridFunction::sample_real(0.0, LN_2, 256, |t| (-t).exp()).unwrap();
        let reps = eval_quadratic_ratio(&f, 1.0, 2.0, &cfg(256), &tols()).unwrap();
        assert!(reps[0].satisfied);
        assert!((reps[0].lhs - 0.5).abs() < 1e-8);
        let factor = (3.0 / (2.0 * SQRT_2)).sqrt();
        assert!((factor - 1.0298835719535588).abs() < 1e-12);
        assert!((reps[0].rhs - factor * 0.5).abs() < 1e-8);
    }

    #[test]
    fn quadratic_ratio_wide_band_leaves_residual() {
        let f = constant(&e2(), 0.0, 1.0, 8);
        let reps = eval_quadratic_ratio(&f, 1.0, 4.0, &cfg(8), &tols()).unwrap();
        assert!(reps[0].satisfied);
        // factor^2 = 5/4, residual = |1 - 5/4| = 1/4
        assert!((reps[0].equality_residual.unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn quadratic_ratio_rejects_zero_lower_bound() {
        let f = constant(&e2(), 0.0, 1.0, 8);
        assert!(matches!(
            eval_quadratic_ratio(&f, 0.0, 2.0, &cfg(8), &tols()),
            Err(EngineError::Input(_))
        ));
    }

    #[test]
    fn weighted_span_trivial_equality() {
        let f = constant(&e2(), 0.0, 1.0, 8);
        let reps = eval_weighted_span(&f, 1.0, 1.0, &cfg(8), &tols()).unwrap();
        assert!(reps[0].satisfied);
        assert!((reps[0].lhs - 1.0).abs() < 1e-12);
        assert!((reps[0].rhs - 1.0).abs() < 1e-12);
        assert!(reps[0].equality_residual.unwrap() < 1e-12);
        // gamma * Gamma = 1 >= 1: corollary a is emitted
        assert_eq!(reps[1].id, ids::WEIGHTED_SPAN_COROLLARY_A);
        assert!(reps[1].satisfied);
    }

    #[test]
    fn weighted_span_exponential_closed_form() {
        let f = GridFunction::sample_real(0.0, 1.0, 256, |t| (-t).exp()).unwrap();
        let reps = eval_weighted_span(&f, 1.0, E, &cfg(256), &tols()).unwrap();
        let lhs_exact = 0.25 + 0.25 * (-2.0f64).exp() + 0.25 * E - 0.75 * (-1.0f64).exp();
        let rhs_exact = 0.5 * (1.0 + E) * (1.0 - (-1.0f64).exp()).powi(2);
        assert!((reps[0].lhs - lhs_exact).abs() < 1e-7, "lhs {}", reps[0].lhs);
        assert!((reps[0].rhs - rhs_exact).abs() < 1e-7, "rhs {}", reps[0].rhs);
        assert!(reps[0].satisfied);
        // gamma Gamma = e >= 1: corollary a
        assert_eq!(reps[1].id, ids::WEIGHTED_SPAN_COROLLARY_A);
        assert!(reps[1].satisfied);
        let a_lhs = (1.0 - (-2.0f64).exp()) / 2.0;
        assert!((reps[1].lhs - a_lhs).abs() < 1e-7);
    }

    #[test]
    fn weighted_span_corollary_b_case() {
        // increasing phi: psi(u) = -u/2, gamma = e^{-1/2}, Gamma = 1
        let f = GridFunction::sample_real(0.0, 1.0, 128, |t| (0.5 * t).exp()).unwrap();
        let gamma = (-0.5f64).exp();
        let reps = eval_weighted_span(&f, gamma, 1.0, &cfg(128), &tols()).unwrap();
        assert!(reps[0].satisfied);
        assert_eq!(reps[1].id, ids::WEIGHTED_SPAN_COROLLARY_B);
        assert!(reps[1].satisfied);
    }

    #[test]
    fn weighted_span_needs_positive_sum() {
        let f = constant(&e2(), 0.0, 1.0, 8);
        assert!(matches!(
            eval_weighted_span(&f, -2.0, 1.0, &cfg(8), &tols()),
            Err(EngineError::Input(_))
        ));
    }

    #[test]
    fn complex_suite_trivial_equalities() {
        let f = constant(&one(), 0.0, 1.0, 8);
        let reps = eval_complex_suite(&f, 1.0, 1.0, &cfg(8), &tols()).unwrap();
        assert_eq!(reps.len(), 3);
        for rep in &reps {
            assert!(rep.satisfied, "{} violated", rep.id);
            assert!(rep.rel_gap.abs() < 1e-12, "{} gap {}", rep.id, rep.rel_gap);
        }
        assert!(reps[2].note.as_deref().unwrap().contains("gamma := m"));
    }

    #[test]
    fn complex_suite_exponential_family() {
        let f = GridFunction::sample(0.0, 1.0, 256, |t| {
            let phi = (-t).exp();
            Ok(ComplexVector::new(vec![Scalar::new(phi, phi)]).unwrap())
        })
        .unwrap();
        let reps = eval_complex_suite(&f, 1.0, E, &cfg(256), &tols()).unwrap();
        for rep in &reps {
            assert!(rep.satisfied, "{} violated, gap {}", rep.id, rep.abs_gap);
        }
    }

    #[test]
    fn complex_suite_unmet_and_input_errors() {
        let ramp = GridFunction::sample_real(0.0, 1.0, 16, |t| t).unwrap();
        assert!(matches!(
            eval_complex_suite(&ramp, 1.0, 2.0, &cfg(16), &tols()),
            Err(EngineError::HypothesisUnmet { .. })
        ));
        let f2 = constant(&e2(), 0.0, 1.0, 8);
        assert!(matches!(
            eval_complex_suite(&f2, 1.0, 2.0, &cfg(8), &tols()),
            Err(EngineError::Input(_))
        ));
    }

    #[test]
    fn inequality_spec_round_trip_and_ids() {
        let entries: Vec<InequalitySpec> = vec![
            InequalitySpec::Triangle,
            InequalitySpec::Karamata { theta: 0.5 },
            InequalitySpec::MultiplicativeBall { rho: 0.6 },
            InequalitySpec::QuadraticBand {
                lower: 1.0,
                upper: 2.0,
            },
            InequalitySpec::WeightedSpan {
                lower: 1.0,
                upper: E,
            },
        ];
        for entry in entries {
            let s = serde_json::to_string(&entry).unwrap();
            let back: InequalitySpec = serde_json::from_str(&s).unwrap();
            assert_eq!(entry, back);
        }
        let s = r#"{"id":"quadratic-mM","m":0.5,"M":2.0}"#;
        let spec: InequalitySpec = serde_json::from_str(s).unwrap();
        assert_eq!(spec.id(), ids::QUADRATIC_BAND);
        // unknown fields are rejected
        let s = r#"{"id":"quadratic-mM","m":0.5,"M":2.0,"bogus":1}"#;
        assert!(serde_json::from_str::<InequalitySpec>(s).is_err());
    }

    #[test]
    fn set_param_binds_by_name() {
        let mut spec = InequalitySpec::MultiplicativeBall { rho: 0.1 };
        assert!(spec.set_param("rho", 0.5));
        assert!(!spec.set_param("m", 1.0));
        match spec {
            InequalitySpec::MultiplicativeBall { rho } => assert_eq!(rho, 0.5),
            _ => unreachable!(),
        }
    }

    proptest! {
        // the base inequality holds for arbitrary sampled functions
        #[test]
        fn triangle_always_satisfied(
            coeffs in proptest::collection::vec(-2.0f64..2.0, 6),
            freq in 0.5f64..4.0,
        ) {
            let f = GridFunction::sample(0.0, 1.0, 64, |t| {
                Ok(ComplexVector::new(vec![
                    Scalar::new(coeffs[0] + coeffs[1] * (freq * t).sin(), coeffs[2] * t),
                    Scalar::new(coeffs[3] * (freq * t).cos(), coeffs[4] + coeffs[5] * t),
                ]).unwrap())
            }).unwrap();
            let rep = eval_triangle(&f, &cfg(64), &tols()).unwrap();
            prop_assert!(rep.satisfied);
        }

        // positive scaling leaves the ratio bound's status and relative gap
        // unchanged and scales both sides identically
        #[test]
        fn ratio_scaling_covariance(c in 0.1f64..10.0, slope in 0.05f64..0.6) {
            let f = GridFunction::sample_real(0.0, 1.0, 64, |t| (-slope * t).exp()).unwrap();
            let g = f.scaled(c);
            let (lower, upper) = ((-slope).exp(), slope.exp().max(1.0));
            let a = eval_quadratic_ratio(&f, lower, upper, &cfg(64), &tols()).unwrap();
            let b = eval_quadratic_ratio(&g, lower, upper, &cfg(64), &tols()).unwrap();
            prop_assert_eq!(a[0].satisfied, b[0].satisfied);
            prop_assert!((b[0].lhs - c * a[0].lhs).abs() <= 1e-10 * (1.0 + c * a[0].lhs.abs()));
            prop_assert!((b[0].rhs - c * a[0].rhs).abs() <= 1e-10 * (1.0 + c * a[0].rhs.abs()));
            prop_assert!((a[0].rel_gap - b[0].rel_gap).abs() <= 1e-9);
        }

        // widening the admissible band never shrinks the quadratic bounds
        #[test]
        fn band_widening_grows_rhs(
            slope in 0.05f64..0.5,
            widen in 0.01f64..1.0,
        ) {
            let f = GridFunction::sample_real(0.0, 1.0, 64, |t| (-slope * t).exp()).unwrap();
            let (lower, upper) = ((-slope).exp(), slope.exp().max(1.0));
            let narrow = eval_quadratic_band(&f, lower, upper, &cfg(64), &tols()).unwrap();
            let wide = eval_quadratic_band(&f, (lower - widen).max(0.0), upper + widen, &cfg(64), &tols()).unwrap();
            prop_assert!(wide.rhs >= narrow.rhs - 1e-12);
            let narrow_r = eval_quadratic_ratio(&f, lower, upper, &cfg(64), &tols()).unwrap();
            let wide_r = eval_quadratic_ratio(&f, (lower - widen).max(1e-3), upper + widen, &cfg(64), &tols()).unwrap();
            prop_assert!(wide_r[0].rhs >= narrow_r[0].rhs - 1e-12);
        }

        // scalar nonnegative multiples of a unit vector close the
        // Diaz-Metcalf bound at K = 1
        #[test]
        fn scalar_multiples_are_equality_witnesses(
            base in 0.1f64..2.0,
            amp in 0.0f64..0.5,
            freq in 0.5f64..3.0,
        ) {
            let f = GridFunction::sample(0.0, 1.0, 64, |t| {
                Ok(e2().scaled(base + amp * (freq * t).sin().abs()))
            }).unwrap();
            let reps = eval_multiplicative_reverse(
                &f,
                &e2(),
                &MultiplicativeVariant::DiazMetcalf { constant: 1.0 },
                &cfg(64),
                &tols(),
            ).unwrap();
            prop_assert!(reps[0].rel_gap.abs() <= 1e-9);
            prop_assert!(reps[0].equality_residual.unwrap() <= 1e-9);
        }
    }
}
