//! Closed catalog of real scalar profiles.
//!
//! Scenario files pick a profile by name with numeric parameters; no
//! user-supplied code is ever evaluated. Profiles serve as psi in the
//! exponential family, as ball modulations, and as the k(t)/r(t) bounds.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScalarProfile {
    Zero,
    Constant { value: f64 },
    /// `slope * u`
    Linear { slope: f64 },
    /// `amplitude * sin(frequency * u)`
    Sine { amplitude: f64, frequency: f64 },
    /// `amplitude * cos(frequency * u)`
    Cosine { amplitude: f64, frequency: f64 },
    /// `coeffs[0] + coeffs[1]*u + coeffs[2]*u^2 + ...`
    Polynomial { coeffs: Vec<f64> },
}

impl ScalarProfile {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Constant { value } => *value,
            Self::Linear { slope } => slope * u,
            Self::Sine {
                amplitude,
                frequency,
            } => amplitude * (frequency * u).sin(),
            Self::Cosine {
                amplitude,
                frequency,
            } => amplitude * (frequency * u).cos(),
            Self::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
            }
        }
    }

    pub fn derivative(&self, u: f64) -> f64 {
        match self {
            Self::Zero | Self::Constant { .. } => 0.0,
            Self::Linear { slope } => *slope,
            Self::Sine {
                amplitude,
                frequency,
            } => amplitude * frequency * (frequency * u).cos(),
            Self::Cosine {
                amplitude,
                frequency,
            } => -amplitude * frequency * (frequency * u).sin(),
            Self::Polynomial { coeffs } => coeffs
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, &c)| acc * u + k as f64 * c),
        }
    }

    /// Profile values at the nodes of a uniform grid on `[a, b]`.
    pub fn sample(&self, a: f64, b: f64, segments: usize) -> Vec<f64> {
        let h = (b - a) / segments as f64;
        (0..=segments).map(|i| self.eval(a + i as f64 * h)).collect()
    }
}
