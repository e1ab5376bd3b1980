//! Finite-dimensional complex vectors and the inner product they carry.
//!
//! Real-valued problems are embedded as vectors with zero imaginary parts;
//! there is no separate real code path.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::VectorError;

/// Complex scalar used throughout; `re` and `im` are IEEE doubles.
pub type Scalar = Complex64;

/// An element of C^n, n >= 1.
///
/// Construction rejects NaN and infinite coordinates so that every quantity
/// derived from stored vectors is safe to put in a report.
///
/// Serializes as a list of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct ComplexVector {
    coords: Vec<Scalar>,
}

impl ComplexVector {
    pub fn new(coords: Vec<Scalar>) -> Result<Self, VectorError> {
        if coords.is_empty() {
            return Err(VectorError::Empty);
        }
        for (index, c) in coords.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(VectorError::NonFinite { index });
            }
        }
        Ok(Self { coords })
    }

    /// Vector with the given real coordinates and zero imaginary parts.
    pub fn from_real(coords: &[f64]) -> Result<Self, VectorError> {
        Self::new(coords.iter().map(|&x| Scalar::new(x, 0.0)).collect())
    }

    /// Scalar value `z` seen as an element of C^1.
    pub fn scalar(z: Scalar) -> Self {
        Self { coords: vec![z] }
    }

    pub fn zero(dim: usize) -> Result<Self, VectorError> {
        Self::new(vec![Scalar::new(0.0, 0.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Inner product, conjugate-linear in the *second* argument:
    /// `inner(x, y) = sum_k x_k * conj(y_k)`.
    ///
    /// This convention is fixed here and relied on everywhere else.
    pub fn inner(&self, other: &Self) -> Result<Scalar, VectorError> {
        self.check_dim(other)?;
        let mut acc = Scalar::new(0.0, 0.0);
        for (x, y) in self.coords.iter().zip(&other.coords) {
            acc += x * y.conj();
        }
        Ok(acc)
    }

    /// Real part of the inner product; symmetric in its arguments.
    pub fn re_inner(&self, other: &Self) -> Result<f64, VectorError> {
        self.check_dim(other)?;
        let mut acc = 0.0;
        for (x, y) in self.coords.iter().zip(&other.coords) {
            acc += x.re * y.re + x.im * y.im;
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn add(&self, other: &Self) -> Result<Self, VectorError> {
        self.check_dim(other)?;
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, VectorError> {
        self.check_dim(other)?;
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x - y)
                .collect(),
        })
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scaled_complex(&self, factor: Scalar) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<(), VectorError> {
        if self.dim() != other.dim() {
            return Err(VectorError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<(f64, f64)>> for ComplexVector {
    type Error = VectorError;

    fn try_from(pairs: Vec<(f64, f64)>) -> Result<Self, VectorError> {
        Self::new(pairs.into_iter().map(|(re, im)| Scalar::new(re, im)).collect())
    }
}

impl From<ComplexVector> for Vec<(f64, f64)> {
    fn from(v: ComplexVector) -> Self {
        v.coords.into_iter().map(|c| (c.re, c.im)).collect()
    }
}
