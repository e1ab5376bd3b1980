//! Vector-valued functions on `[a, b]`, stored as samples on a uniform grid.
//!
//! Almost-everywhere conditions are read as "at every grid node (or node
//! pair)" — a strictly stronger, fully checkable interpretation.

use crate::error::GridError;
use crate::vector::ComplexVector;

/// Default segment count for grids and quadrature.
pub const DEFAULT_SEGMENTS: usize = 256;

/// Samples of a function `[a, b] -> C^d` at `N + 1` uniform nodes.
///
/// `N` is even and at least 2 so composite Simpson applies directly.
/// Values are immutable after construction and safe to share.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    a: f64,
    b: f64,
    values: Vec<ComplexVector>,
    dim: usize,
}

impl GridFunction {
    /// Wrap existing node values; `values.len()` must be `N + 1` for an
    /// even `N >= 2` and all values must share one dimension.
    pub fn from_values(a: f64, b: f64, values: Vec<ComplexVector>) -> Result<Self, GridError> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(GridError::BadInterval { a, b });
        }
        if values.len() < 3 || (values.len() - 1) % 2 != 0 {
            return Err(GridError::BadSegmentCount {
                n: values.len().saturating_sub(1),
            });
        }
        let dim = values[0].dim();
        for (index, v) in values.iter().enumerate() {
            if v.dim() != dim {
                return Err(GridError::MixedDimensions {
                    index,
                    found: v.dim(),
                    expected: dim,
                });
            }
        }
        Ok(Self { a, b, values, dim })
    }

    /// Evaluate `f` at the uniform nodes of `[a, b]`.
    ///
    /// Nodes are computed as `a + i * h` with `h = (b - a) / N`, so
    /// re-evaluating the same closure reproduces the stored values
    /// bit-for-bit.
    pub fn sample<F>(a: f64, b: f64, segments: usize, f: F) -> Result<Self, GridError>
    where
        F: Fn(f64) -> Result<ComplexVector, GridError>,
    {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(GridError::BadInterval { a, b });
        }
        if segments < 2 || segments % 2 != 0 {
            return Err(GridError::BadSegmentCount { n: segments });
        }
        let h = (b - a) / segments as f64;
        let values = (0..=segments)
            .map(|i| f(a + i as f64 * h))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_values(a, b, values)
    }

    /// Scalar-valued grid from real samples of a function `[a, b] -> R`.
    pub fn sample_real<F>(a: f64, b: f64, segments: usize, f: F) -> Result<Self, GridError>
    where
        F: Fn(f64) -> f64,
    {
        Self::sample(a, b, segments, |t| {
            Ok(ComplexVector::from_real(&[f(t)])?)
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Segment count `N`; the grid has `N + 1` nodes.
    pub fn segments(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / self.segments() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.a + i as f64 * self.step()
    }

    pub fn values(&self) -> &[ComplexVector] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &ComplexVector {
        &self.values[i]
    }

    /// Per-node Euclidean norms, in node order.
    pub fn node_norms(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    /// The function `c * f` on the same grid.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            a: self.a,
            b: self.b,
            values: self.values.iter().map(|v| v.scaled(c)).collect(),
            dim: self.dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::Scalar;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn constant_sampling() {
        let e = ComplexVector::from_real(&[1.0, 0.0]).unwrap();
        let f = GridFunction::sample(0.0, 1.0, 4, |_| Ok(e.clone())).unwrap();
        assert_eq!(f.values().len(), 5);
        for v in f.values() {
            assert_eq!(v, &e);
        }
    }

    #[test]
    fn linear_sampling_nodes() {
        // f(t) = t * e on [0, 1], N = 2 -> values 0, 0.5e, 1e
        let f = GridFunction::sample(0.0, 1.0, 2, |t| {
            Ok(ComplexVector::from_real(&[t]).unwrap())
        })
        .unwrap();
        assert_eq!(f.value(0).coords()[0], Scalar::new(0.0, 0.0));
        assert_eq!(f.value(1).coords()[0], Scalar::new(0.5, 0.0));
        assert_eq!(f.value(2).coords()[0], Scalar::new(1.0, 0.0));
    }

    #[test]
    fn circle_sampling() {
        // f(t) = (cos t, sin t) on [0, pi/2], N = 2
        let f = GridFunction::sample(0.0, FRAC_PI_2, 2, |t| {
            Ok(ComplexVector::from_real(&[t.cos(), t.sin()]).unwrap())
        })
        .unwrap();
        let half_sqrt2 = (0.5f64).sqrt();
        assert!((f.value(0).coords()[0].re - 1.0).abs() < 1e-15);
        assert!((f.value(1).coords()[0].re - half_sqrt2).abs() < 1e-12);
        assert!((f.value(1).coords()[1].re - half_sqrt2).abs() < 1e-12);
        assert!(f.value(2).coords()[0].re.abs() < 1e-15);
        assert!((f.value(2).coords()[1].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn resampling_is_bit_exact() {
        let gen = |t: f64| ComplexVector::from_real(&[(3.1 * t).sin(), t * t]).unwrap();
        let f = GridFunction::sample(-0.5, 2.0, 8, |t| Ok(gen(t))).unwrap();
        for i in 0..=f.segments() {
            assert_eq!(f.value(i), &gen(f.node(i)));
        }
    }

    #[test]
    fn rejects_bad_grids() {
        let mk = |a: f64, b: f64, n: usize| {
            GridFunction::sample(a, b, n, |_| Ok(ComplexVector::from_real(&[1.0]).unwrap()))
        };
        assert!(matches!(mk(0.0, 1.0, 3), Err(GridError::BadSegmentCount { n: 3 })));
        assert!(matches!(mk(0.0, 1.0, 0), Err(GridError::BadSegmentCount { .. })));
        assert!(matches!(mk(1.0, 1.0, 4), Err(GridError::BadInterval { .. })));
        assert!(matches!(mk(2.0, 1.0, 4), Err(GridError::BadInterval { .. })));
    }

    #[test]
    fn rejects_mixed_dimensions() {
        let values = vec![
            ComplexVector::from_real(&[1.0]).unwrap(),
            ComplexVector::from_real(&[1.0, 2.0]).unwrap(),
            ComplexVector::from_real(&[1.0]).unwrap(),
        ];
        assert!(matches!(
            GridFunction::from_values(0.0, 1.0, values),
            Err(GridError::MixedDimensions { index: 1, .. })
        ));
    }
}
