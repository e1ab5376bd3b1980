//! Quadrature on `[a, b]` and on the triangle `{(t, s) : a <= t <= s <= b}`.
//!
//! Everything is computed from stored node values; descriptors are never
//! re-evaluated, so hypothesis checks and inequality evaluations see the
//! identical function. Summation order is fixed (left to right per row,
//! rows in order) for deterministic results.

use serde::{Deserialize, Serialize};

use crate::error::QuadratureError;
use crate::grid::{GridFunction, DEFAULT_SEGMENTS};
use crate::vector::{ComplexVector, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    CompositeSimpson,
    Trapezoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rule: QuadratureRule,
    pub segments: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rule: QuadratureRule::CompositeSimpson,
            segments: DEFAULT_SEGMENTS,
        }
    }
}

impl QuadratureConfig {
    pub fn new(rule: QuadratureRule, segments: usize) -> Result<Self, QuadratureError> {
        if segments < 2 || segments % 2 != 0 {
            return Err(QuadratureError::BadSegmentCount { n: segments });
        }
        Ok(Self { rule, segments })
    }

    pub fn simpson(segments: usize) -> Result<Self, QuadratureError> {
        Self::new(QuadratureRule::CompositeSimpson, segments)
    }

    pub fn trapezoid(segments: usize) -> Result<Self, QuadratureError> {
        Self::new(QuadratureRule::Trapezoid, segments)
    }

    fn check_grid(&self, f: &GridFunction) -> Result<(), QuadratureError> {
        if f.segments() != self.segments {
            return Err(QuadratureError::GridMismatch {
                grid: f.segments(),
                config: self.segments,
            });
        }
        Ok(())
    }

    /// Per-node weights including the step factor, so an integral is the
    /// plain dot product of weights with samples.
    fn node_weights(&self, h: f64) -> Vec<f64> {
        let n = self.segments;
        match self.rule {
            QuadratureRule::CompositeSimpson => {
                let third = h / 3.0;
                (0..=n)
                    .map(|i| {
                        if i == 0 || i == n {
                            third
                        } else if i % 2 == 1 {
                            4.0 * third
                        } else {
                            2.0 * third
                        }
                    })
                    .collect()
            }
            QuadratureRule::Trapezoid => (0..=n)
                .map(|i| if i == 0 || i == n { 0.5 * h } else { h })
                .collect(),
        }
    }
}

/// Integrate real samples given at the nodes of a uniform grid with
/// step `h`.
pub fn integrate_samples(
    cfg: &QuadratureConfig,
    h: f64,
    samples: &[f64],
) -> Result<f64, QuadratureError> {
    if samples.len() != cfg.segments + 1 {
        return Err(QuadratureError::GridMismatch {
            grid: samples.len().saturating_sub(1),
            config: cfg.segments,
        });
    }
    let weights = cfg.node_weights(h);
    let mut acc = 0.0;
    for (index, (w, g)) in weights.iter().zip(samples).enumerate() {
        if !g.is_finite() {
            return Err(QuadratureError::NonFiniteSample {
                what: "sample",
                index,
            });
        }
        acc += w * g;
    }
    Ok(acc)
}

/// Componentwise integral of the sampled function; linear in `f`.
pub fn bochner_integral(
    f: &GridFunction,
    cfg: &QuadratureConfig,
) -> Result<ComplexVector, QuadratureError> {
    cfg.check_grid(f)?;
    let weights = cfg.node_weights(f.step());
    let mut acc = vec![Scalar::new(0.0, 0.0); f.dim()];
    for (w, v) in weights.iter().zip(f.values()) {
        for (a, c) in acc.iter_mut().zip(v.coords()) {
            *a += c * *w;
        }
    }
    Ok(ComplexVector::new(acc).expect("finite samples integrate to a finite vector"))
}

/// Integral of `t -> ||f(t)||`; nonnegative.
pub fn integral_norm(f: &GridFunction, cfg: &QuadratureConfig) -> Result<f64, QuadratureError> {
    cfg.check_grid(f)?;
    let weights = cfg.node_weights(f.step());
    let mut acc = 0.0;
    for (w, v) in weights.iter().zip(f.values()) {
        acc += w * v.norm();
    }
    Ok(acc)
}

/// Integral of `s -> weight(s) * ||f(s)||^2` with a caller-supplied weight.
pub fn weighted_norm_integral<W>(
    f: &GridFunction,
    cfg: &QuadratureConfig,
    weight: W,
) -> Result<f64, QuadratureError>
where
    W: Fn(f64) -> f64,
{
    cfg.check_grid(f)?;
    let weights = cfg.node_weights(f.step());
    let mut acc = 0.0;
    for (i, (w, v)) in weights.iter().zip(f.values()).enumerate() {
        let wt = weight(f.node(i));
        if !wt.is_finite() {
            return Err(QuadratureError::NonFiniteSample {
                what: "weight",
                index: i,
            });
        }
        acc += w * wt * v.norm_sq();
    }
    Ok(acc)
}

/// Double integral of a pair kernel over the triangle `t <= s`.
///
/// The rule is the product trapezoid restricted to `i <= j` with weight 1/2
/// on the diagonal, on the same grid as `f`; `cfg.rule` does not change it.
/// For a symmetric kernel this equals exactly half of the full-square
/// product trapezoid, which is what makes the discrete quadratic identity
/// hold to rounding when the single integrals also use the trapezoid rule.
///
/// The kernel receives `(i, j, t_i, s_j)` for node indices `i <= j`.
pub fn triangle_integral<K>(
    f: &GridFunction,
    cfg: &QuadratureConfig,
    kernel: K,
) -> Result<f64, QuadratureError>
where
    K: Fn(usize, usize, f64, f64) -> f64,
{
    cfg.check_grid(f)?;
    let n = f.segments();
    let h = f.step();
    let edge = |i: usize| if i == 0 || i == n { 0.5 } else { 1.0 };
    let mut acc = 0.0;
    for i in 0..=n {
        let t = f.node(i);
        let mut row = 0.0;
        for j in i..=n {
            let s = f.node(j);
            let k = kernel(i, j, t, s);
            if !k.is_finite() {
                return Err(QuadratureError::KernelEvaluation { i, j });
            }
            let diag = if i == j { 0.5 } else { 1.0 };
            row += edge(i) * edge(j) * diag * k;
        }
        acc += row;
    }
    Ok(acc * h * h)
}
