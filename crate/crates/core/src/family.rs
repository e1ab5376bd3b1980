//! Admissible example families.
//!
//! Each constructor guarantees its hypothesis by construction: the ball
//! family stays inside a radius-`rho` ball around a unit vector, and the
//! exponential family `phi(t) = exp(-psi(t))` with a derivative-bounded
//! `psi` satisfies the pairwise ratio bounds `gamma phi(s) <= phi(t) <=
//! Gamma phi(s)` for `t <= s`.

use serde::{Deserialize, Serialize};

use crate::error::FamilyError;
use crate::grid::GridFunction;
use crate::profile::ScalarProfile;
use crate::vector::ComplexVector;

/// Tolerance for unit-norm and orthogonality validation.
pub const UNIT_TOL: f64 = 1e-12;

/// Scalar family `phi(t) = exp(-psi(t))` on `[a, b]`, with derivative
/// bounds `theta <= psi' <= theta_upper` and the implied ratio bounds
/// `gamma = exp(theta (b - a))`, `Gamma = exp(theta_upper (b - a))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagrangeFamilySpec {
    pub psi: ScalarProfile,
    pub theta: f64,
    #[serde(rename = "Theta")]
    pub theta_upper: f64,
    pub a: f64,
    pub b: f64,
}

impl LagrangeFamilySpec {
    pub fn gamma(&self) -> f64 {
        (self.theta * (self.b - self.a)).exp()
    }

    pub fn gamma_upper(&self) -> f64 {
        (self.theta_upper * (self.b - self.a)).exp()
    }
}

/// `f(t) = e + rho * modulation(t) * direction` with `direction` a unit
/// vector orthogonal to the unit vector `e` and modulation values in
/// `[-1, 1]`, so `||f(t) - e|| <= rho` at every node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallFamilySpec {
    pub e: ComplexVector,
    pub rho: f64,
    pub direction: ComplexVector,
    pub modulation: ScalarProfile,
}

/// `f(t) = scale * profile(t) * e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantDirectionSpec {
    pub e: ComplexVector,
    pub profile: ScalarProfile,
    #[serde(default = "default_scale")]
    pub scale: f64,
}

fn default_scale() -> f64 {
    1.0
}

/// Build the scalar exponential family; returns the grid together with the
/// guaranteed ratio bounds `(gamma, Gamma)`.
///
/// The derivative bounds are validated on a refinement of the node grid
/// before any value is produced.
pub fn make_lagrange_family(
    spec: &LagrangeFamilySpec,
    segments: usize,
) -> Result<(GridFunction, f64, f64), FamilyError> {
    if !(spec.theta <= 0.0 && spec.theta_upper >= 0.0)
        || !spec.theta.is_finite()
        || !spec.theta_upper.is_finite()
    {
        return Err(FamilyError::BadDerivativeBounds {
            theta: spec.theta,
            theta_upper: spec.theta_upper,
        });
    }
    // Fine derivative grid: at least 1025 points, at least 4x the node grid.
    let fine = (4 * segments).max(1024);
    let h = (spec.b - spec.a) / fine as f64;
    let band = 1e-12 * (1.0 + spec.theta.abs().max(spec.theta_upper.abs()));
    for i in 0..=fine {
        let u = spec.a + i as f64 * h;
        let d = spec.psi.derivative(u);
        if d < spec.theta - band || d > spec.theta_upper + band {
            return Err(FamilyError::DerivativeOutOfRange {
                theta: spec.theta,
                theta_upper: spec.theta_upper,
                at: u,
                value: d,
            });
        }
    }
    let f = GridFunction::sample_real(spec.a, spec.b, segments, |t| (-spec.psi.eval(t)).exp())?;
    Ok((f, spec.gamma(), spec.gamma_upper()))
}

/// Build the ball family on `[a, b]`.
pub fn make_ball_family(
    spec: &BallFamilySpec,
    a: f64,
    b: f64,
    segments: usize,
) -> Result<GridFunction, FamilyError> {
    if !(spec.rho > 0.0 && spec.rho < 1.0) {
        return Err(FamilyError::BadRadius { rho: spec.rho });
    }
    if !spec.e.is_unit(UNIT_TOL) {
        return Err(FamilyError::NotUnit {
            role: "e",
            norm: spec.e.norm(),
        });
    }
    if !spec.direction.is_unit(UNIT_TOL) {
        return Err(FamilyError::NotUnit {
            role: "direction",
            norm: spec.direction.norm(),
        });
    }
    let ip = spec.direction.re_inner(&spec.e)?;
    if ip.abs() > UNIT_TOL {
        return Err(FamilyError::NotOrthogonal { value: ip });
    }
    let modulation = spec.modulation.sample(a, b, segments);
    for (index, &m) in modulation.iter().enumerate() {
        if m.abs() > 1.0 + UNIT_TOL {
            return Err(FamilyError::ModulationOutOfRange {
                index,
                value: m.abs(),
            });
        }
    }
    let mut values = Vec::with_capacity(segments + 1);
    for &m in &modulation {
        values.push(spec.e.add(&spec.direction.scaled(spec.rho * m))?);
    }
    Ok(GridFunction::from_values(a, b, values)?)
}

/// Build `f(t) = scale * profile(t) * e` on `[a, b]`.
pub fn make_constant_direction(
    spec: &ConstantDirectionSpec,
    a: f64,
    b: f64,
    segments: usize,
) -> Result<GridFunction, FamilyError> {
    if !spec.e.is_unit(UNIT_TOL) {
        return Err(FamilyError::NotUnit {
            role: "e",
            norm: spec.e.norm(),
        });
    }
    let mut values = Vec::with_capacity(segments + 1);
    let h = (b - a) / segments as f64;
    for i in 0..=segments {
        let t = a + i as f64 * h;
        values.push(spec.e.scaled(spec.scale * spec.profile.eval(t)));
    }
    Ok(GridFunction::from_values(a, b, values)?)
}

/// Declarative family selector used by scenario files and the sharpness
/// search. The interval comes from the caller.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilySpec {
    Ball(BallFamilySpec),
    Lagrange {
        psi: ScalarProfile,
        theta: f64,
        #[serde(rename = "Theta")]
        theta_upper: f64,
    },
    ConstantDirection(ConstantDirectionSpec),
}

/// A constructed family plus whatever bounds the construction certifies.
#[derive(Debug, Clone)]
pub struct BuiltFamily {
    pub f: GridFunction,
    /// `(gamma, Gamma)` pairwise ratio bounds, present for the Lagrange
    /// family.
    pub ratio_bounds: Option<(f64, f64)>,
}

impl FamilySpec {
    pub fn build(&self, a: f64, b: f64, segments: usize) -> Result<BuiltFamily, FamilyError> {
        match self {
            Self::Ball(spec) => Ok(BuiltFamily {
                f: make_ball_family(spec, a, b, segments)?,
                ratio_bounds: None,
            }),
            Self::Lagrange {
                psi,
                theta,
                theta_upper,
            } => {
                let spec = LagrangeFamilySpec {
                    psi: psi.clone(),
                    theta: *theta,
                    theta_upper: *theta_upper,
                    a,
                    b,
                };
                let (f, gamma, gamma_upper) = make_lagrange_family(&spec, segments)?;
                Ok(BuiltFamily {
                    f,
                    ratio_bounds: Some((gamma, gamma_upper)),
                })
            }
            Self::ConstantDirection(spec) => Ok(BuiltFamily {
                f: make_constant_direction(spec, a, b, segments)?,
                ratio_bounds: None,
            }),
        }
    }

    /// The unit vector inequalities measure against: the family's `e`, or
    /// the scalar unit for the scalar-valued Lagrange family.
    pub fn reference_direction(&self) -> ComplexVector {
        match self {
            Self::Ball(spec) => spec.e.clone(),
            Self::Lagrange { .. } => {
                ComplexVector::from_real(&[1.0]).expect("unit scalar")
            }
            Self::ConstantDirection(spec) => spec.e.clone(),
        }
    }

    /// Set a named free parameter (used by sweeps and the search).
    pub fn set_param(&mut self, name: &str, value: f64) -> Result<(), FamilyError> {
        match (self, name) {
            (Self::Ball(spec), "rho") => {
                spec.rho = value;
                Ok(())
            }
            (Self::Lagrange { theta, .. }, "theta") => {
                *theta = value;
                Ok(())
            }
            (Self::Lagrange { theta_upper, .. }, "Theta") => {
                *theta_upper = value;
                Ok(())
            }
            (Self::ConstantDirection(spec), "scale") => {
                spec.scale = value;
                Ok(())
            }
            _ => Err(FamilyError::UnknownParameter {
                name: name.to_string(),
            }),
        }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        match (self, name) {
            (Self::Ball(spec), "rho") => Some(spec.rho),
            (Self::Lagrange { theta, .. }, "theta") => Some(*theta),
            (Self::Lagrange { theta_upper, .. }, "Theta") => Some(*theta_upper),
            (Self::ConstantDirection(spec), "scale") => Some(spec.scale),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn e2() -> ComplexVector {
        ComplexVector::from_real(&[1.0, 0.0]).unwrap()
    }

    fn u2() -> ComplexVector {
        ComplexVector::from_real(&[0.0, 1.0]).unwrap()
    }

    #[test]
    fn trivial_lagrange_family_is_constant_one() {
        let spec = LagrangeFamilySpec {
            psi: ScalarProfile::Zero,
            theta: 0.0,
            theta_upper: 0.0,
            a: 0.0,
            b: 1.0,
        };
        let (f, gamma, gamma_upper) = make_lagrange_family(&spec, 8).unwrap();
        assert_eq!(gamma, 1.0);
        assert_eq!(gamma_upper, 1.0);
        for v in f.values() {
            assert_eq!(v.coords()[0].re, 1.0);
        }
    }

    #[test]
    fn linear_psi_gives_decaying_exponential() {
        let spec = LagrangeFamilySpec {
            psi: ScalarProfile::Linear { slope: 1.0 },
            theta: 0.0,
            theta_upper: 1.0,
            a: 0.0,
            b: 1.0,
        };
        let (f, gamma, gamma_upper) = make_lagrange_family(&spec, 16).unwrap();
        assert_eq!(gamma, 1.0);
        assert!((gamma_upper - E).abs() < 1e-15);
        for i in 0..=16 {
            let t = f.node(i);
            assert!((f.value(i).coords()[0].re - (-t).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn ratio_bounds_hold_on_all_node_pairs() {
        let spec = LagrangeFamilySpec {
            psi: ScalarProfile::Sine {
                amplitude: 1.0,
                frequency: 1.0,
            },
            theta: -1.0,
            theta_upper: 1.0,
            a: 0.0,
            b: PI,
        };
        let (f, gamma, gamma_upper) = make_lagrange_family(&spec, 64).unwrap();
        assert!((gamma - (-PI).exp()).abs() < 1e-15);
        assert!((gamma_upper - PI.exp()).abs() < 1e-12);
        // brute force over all ordered pairs
        for i in 0..=64usize {
            for j in i..=64 {
                let phi_t = f.value(i).coords()[0].re;
                let phi_s = f.value(j).coords()[0].re;
                assert!(gamma * phi_s <= phi_t * (1.0 + 1e-12));
                assert!(phi_t <= gamma_upper * phi_s * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn derivative_bound_violation_is_caught() {
        let spec = LagrangeFamilySpec {
            psi: ScalarProfile::Linear { slope: 2.0 },
            theta: 0.0,
            theta_upper: 1.0,
            a: 0.0,
            b: 1.0,
        };
        assert!(matches!(
            make_lagrange_family(&spec, 8),
            Err(FamilyError::DerivativeOutOfRange { .. })
        ));
    }

    #[test]
    fn ball_family_zero_modulation_is_constant() {
        let spec = BallFamilySpec {
            e: e2(),
            rho: 0.5,
            direction: u2(),
            modulation: ScalarProfile::Zero,
        };
        let f = make_ball_family(&spec, 0.0, 1.0, 4).unwrap();
        for v in f.values() {
            assert_eq!(v.sub(&e2()).unwrap().norm(), 0.0);
        }
    }

    #[test]
    fn ball_family_stays_within_radius() {
        let spec = BallFamilySpec {
            e: e2(),
            rho: 0.6,
            direction: u2(),
            modulation: ScalarProfile::Cosine {
                amplitude: 1.0,
                frequency: 1.0,
            },
        };
        let f = make_ball_family(&spec, 0.0, PI, 32).unwrap();
        let mut max_dist: f64 = 0.0;
        for v in f.values() {
            max_dist = max_dist.max(v.sub(&e2()).unwrap().norm());
        }
        assert!((max_dist - 0.6).abs() < 1e-14);
        for v in f.values() {
            assert!(v.sub(&e2()).unwrap().norm() <= 0.6 + 1e-12);
        }
    }

    #[test]
    fn ball_family_validation() {
        let bad_e = BallFamilySpec {
            e: ComplexVector::from_real(&[2.0, 0.0]).unwrap(),
            rho: 0.5,
            direction: u2(),
            modulation: ScalarProfile::Zero,
        };
        assert!(matches!(
            make_ball_family(&bad_e, 0.0, 1.0, 4),
            Err(FamilyError::NotUnit { role: "e", .. })
        ));

        let skew = BallFamilySpec {
            e: e2(),
            rho: 0.5,
            direction: e2(),
            modulation: ScalarProfile::Zero,
        };
        assert!(matches!(
            make_ball_family(&skew, 0.0, 1.0, 4),
            Err(FamilyError::NotOrthogonal { .. })
        ));

        let bad_rho = BallFamilySpec {
            e: e2(),
            rho: 1.0,
            direction: u2(),
            modulation: ScalarProfile::Zero,
        };
        assert!(matches!(
            make_ball_family(&bad_rho, 0.0, 1.0, 4),
            Err(FamilyError::BadRadius { rho: 1.0 })
        ));
    }

    #[test]
    fn oversized_modulation_rejected() {
        let spec = BallFamilySpec {
            e: e2(),
            rho: 0.5,
            direction: u2(),
            modulation: ScalarProfile::Constant { value: 1.5 },
        };
        assert!(matches!(
            make_ball_family(&spec, 0.0, 1.0, 4),
            Err(FamilyError::ModulationOutOfRange { .. })
        ));
    }

    #[test]
    fn family_spec_params() {
        let mut spec = FamilySpec::Ball(BallFamilySpec {
            e: e2(),
            rho: 0.3,
            direction: u2(),
            modulation: ScalarProfile::Zero,
        });
        assert_eq!(spec.param("rho"), Some(0.3));
        spec.set_param("rho", 0.7).unwrap();
        assert_eq!(spec.param("rho"), Some(0.7));
        assert!(spec.set_param("scale", 1.0).is_err());
    }
}
