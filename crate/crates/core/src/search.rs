//! Gap maximization over parametrized admissible families, plus
//! constructive equality witnesses.
//!
//! The optimizer is derivative-free coordinate descent with random
//! restarts and geometric step shrinking. Objectives are cheap and
//! low-dimensional and can be non-smooth at hypothesis boundaries, so
//! nothing fancier is warranted. Candidates whose hypothesis fails score
//! negative infinity instead of erroring, which keeps the search total;
//! such a candidate is never returned.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{EngineError, SearchError};
use crate::family::{BallFamilySpec, FamilySpec};
use crate::grid::GridFunction;
use crate::inequality::{ids, InequalityReport, InequalitySpec, Tolerances};
use crate::profile::ScalarProfile;
use crate::quadrature::QuadratureConfig;
use crate::vector::ComplexVector;

/// Number of random restarts.
pub const DEFAULT_RESTARTS: usize = 8;
/// Step shrinks (by a factor of 1/2) before a restart gives up.
pub const MAX_SHRINKS: usize = 6;

/// Half-open parameter range `[lo, hi]` serialized as a two-element array.
pub type ParamRange = (f64, f64);

/// Search problem: a family, the parameters left free with their ranges,
/// the target inequality, and the evaluation budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub family: FamilySpec,
    /// Free parameters by name; names also bind matching inequality
    /// parameters (e.g. `rho` for the ball family and its bound).
    pub free: BTreeMap<String, ParamRange>,
    pub inequality: InequalitySpec,
    /// Candidate evaluations after the initial midpoint.
    pub budget: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_params: BTreeMap<String, f64>,
    pub report: InequalityReport,
    pub evaluations: usize,
    /// Label making explicit that this is probe evidence, not a bound.
    pub note: String,
    /// Scores of every probed candidate, for bookkeeping checks.
    #[serde(skip)]
    pub probed_scores: Vec<f64>,
}

struct Objective<'a> {
    spec: &'a SearchSpec,
    names: Vec<String>,
    a: f64,
    b: f64,
    cfg: &'a QuadratureConfig,
    tols: &'a Tolerances,
}

impl Objective<'_> {
    /// Score a candidate: the relative gap of the target inequality, or
    /// negative infinity when the candidate is infeasible.
    fn eval(&self, point: &[f64]) -> (f64, Option<InequalityReport>) {
        let mut family = self.spec.family.clone();
        let mut inequality = self.spec.inequality.clone();
        for (name, &value) in self.names.iter().zip(point) {
            if family.set_param(name, value).is_err() {
                // not a family parameter; it may still bind below
            }
            inequality.set_param(name, value);
        }
        let built = match family.build(self.a, self.b, self.cfg.segments) {
            Ok(built) => built,
            Err(_) => return (f64::NEG_INFINITY, None),
        };
        let e = family.reference_direction();
        match inequality.evaluate(&built.f, &e, self.cfg, self.tols) {
            Ok(reports) => {
                let primary = reports.into_iter().next().expect("at least one report");
                (primary.rel_gap, Some(primary))
            }
            Err(EngineError::HypothesisUnmet { .. }) => (f64::NEG_INFINITY, None),
            Err(_) => (f64::NEG_INFINITY, None),
        }
    }
}

struct Best {
    score: f64,
    point: Vec<f64>,
    report: Option<InequalityReport>,
}

impl Best {
    fn new() -> Self {
        Self {
            score: f64::NEG_INFINITY,
            point: Vec::new(),
            report: None,
        }
    }

    /// Higher score wins; ties go to the lexicographically smaller point.
    fn offer(&mut self, score: f64, point: &[f64], report: Option<InequalityReport>) {
        let Some(report) = report else { return };
        let better = match &self.report {
            None => true,
            Some(_) => {
                score > self.score || (score == self.score && point < self.point.as_slice())
            }
        };
        if better {
            self.score = score;
            self.point = point.to_vec();
            self.report = Some(report);
        }
    }
}

/// Maximize the relative gap of the target inequality over the free
/// parameters. Deterministic given the seed; restarts run in a fixed
/// order and the final reduction follows restart index.
pub fn maximize_relative_gap(
    spec: &SearchSpec,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
    tols: &Tolerances,
) -> Result<SearchResult, SearchError> {
    let names: Vec<String> = spec.free.keys().cloned().collect();
    let mut lo = Vec::with_capacity(names.len());
    let mut hi = Vec::with_capacity(names.len());
    for (name, &(l, h)) in &spec.free {
        if !(l <= h) || !l.is_finite() || !h.is_finite() {
            return Err(SearchError::EmptyRange {
                name: name.clone(),
                lo: l,
                hi: h,
            });
        }
        lo.push(l);
        hi.push(h);
    }
    // every free name must bind the family or the inequality
    for (name, &(l, _)) in &spec.free {
        let mut fam = spec.family.clone();
        let mut ineq = spec.inequality.clone();
        let binds = fam.set_param(name, l).is_ok() || ineq.set_param(name, l);
        if !binds {
            return Err(SearchError::UnboundParameter { name: name.clone() });
        }
    }
    let objective = Objective {
        spec,
        names: names.clone(),
        a,
        b,
        cfg,
        tols,
    };

    let midpoint: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| 0.5 * (l + h)).collect();
    let mut probed_scores = Vec::new();
    let mut best = Best::new();
    let (score, report) = objective.eval(&midpoint);
    probed_scores.push(score);
    best.offer(score, &midpoint, report);

    let mut remaining = spec.budget;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for restart in 0..DEFAULT_RESTARTS {
        if remaining == 0 || names.is_empty() {
            break;
        }
        let mut current: Vec<f64> = if restart == 0 {
            midpoint.clone()
        } else {
            lo.iter()
                .zip(&hi)
                .map(|(&l, &h)| if l == h { l } else { rng.random_range(l..=h) })
                .collect()
        };
        let mut current_score = if restart == 0 {
            best.score
        } else {
            remaining -= 1;
            let (s, r) = objective.eval(&current);
            probed_scores.push(s);
            best.offer(s, &current, r);
            s
        };

        let mut step: Vec<f64> = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &h)| ((h - l) / 4.0).max(0.0))
            .collect();
        let mut shrinks = 0;
        while shrinks <= MAX_SHRINKS && remaining > 0 {
            let mut improved = false;
            'coords: for k in 0..names.len() {
                if step[k] == 0.0 {
                    continue;
                }
                for dir in [1.0, -1.0] {
                    if remaining == 0 {
                        break 'coords;
                    }
                    let mut cand = current.clone();
                    cand[k] = (cand[k] + dir * step[k]).clamp(lo[k], hi[k]);
                    if cand[k] == current[k] {
                        continue;
                    }
                    remaining -= 1;
                    let (s, r) = objective.eval(&cand);
                    probed_scores.push(s);
                    best.offer(s, &cand, r);
                    if s > current_score {
                        current = cand;
                        current_score = s;
                        improved = true;
                    }
                }
            }
            if !improved {
                for s in step.iter_mut() {
                    *s *= 0.5;
                }
                shrinks += 1;
            }
        }
    }

    let report = best.report.ok_or(SearchError::EmptyFeasibleSet)?;
    let best_params = names.into_iter().zip(best.point).collect();
    Ok(SearchResult {
        best_params,
        report,
        evaluations: probed_scores.len(),
        note: "exploratory probe of gap size; no optimality certificate".to_string(),
        probed_scores,
    })
}

/// Construct a grid function that attains equality in the target
/// inequality, when the scalar-multiple family `f(t) = phi(t) e` with
/// matched constants provides one.
///
/// Supported targets and their parameter constraints:
/// - `multiplicative-K` with `K = 1`: `f(t) = (1 + (t - a)) e`;
/// - `quadratic-mM`, `quadratic-ratio` with `m = M = 1`: constant `e`;
/// - `weighted-gamma` with `gamma = Gamma = 1`: constant `e`;
/// - `additive-k` with optional `rho` in `(0, 1)` (default `0.6`):
///   a zero-mean ball family whose saturating defect profile
///   `k(t) = ||f(t)|| - Re<f(t), e>` closes the bound.
pub fn equality_witness(
    inequality_id: &str,
    params: &BTreeMap<String, f64>,
    a: f64,
    b: f64,
    segments: usize,
) -> Result<GridFunction, SearchError> {
    let needs_one = |name: &str| -> Result<(), SearchError> {
        let v = params.get(name).copied().unwrap_or(1.0);
        if (v - 1.0).abs() > 1e-12 {
            return Err(SearchError::WitnessConstraint {
                id: inequality_id.to_string(),
                requirement: format!("{name} = 1"),
            });
        }
        Ok(())
    };
    let e2 = ComplexVector::from_real(&[1.0, 0.0]).expect("unit basis vector");
    match inequality_id {
        ids::MULTIPLICATIVE_DM => {
            needs_one("K")?;
            Ok(GridFunction::sample(a, b, segments, |t| {
                Ok(e2.scaled(1.0 + (t - a)))
            })?)
        }
        ids::QUADRATIC_BAND | ids::QUADRATIC_RATIO => {
            needs_one("m")?;
            needs_one("M")?;
            Ok(GridFunction::sample(a, b, segments, |_| Ok(e2.clone()))?)
        }
        ids::WEIGHTED_SPAN => {
            needs_one("gamma")?;
            needs_one("Gamma")?;
            Ok(GridFunction::sample(a, b, segments, |_| Ok(e2.clone()))?)
        }
        ids::ADDITIVE_PROFILE => {
            let rho = params.get("rho").copied().unwrap_or(0.6);
            let spec = BallFamilySpec {
                e: e2,
                rho,
                direction: ComplexVector::from_real(&[0.0, 1.0]).expect("unit basis vector"),
                // one full sine period has zero mean over any [a, b], so
                // the integral of f stays parallel to e
                modulation: ScalarProfile::Sine {
                    amplitude: 1.0,
                    frequency: 2.0 * std::f64::consts::PI / (b - a),
                },
            };
            Ok(crate::family::make_ball_family(&spec, a, b, segments)?)
        }
        other => Err(SearchError::UnsupportedWitness {
            id: other.to_string(),
        }),
    }
}

/// Saturating defect profile `k_i = max(0, ||f_i|| - Re<f_i, e>)` at the
/// nodes, the pointwise-tight bound for the additive reverse.
pub fn saturating_defect_values(
    f: &GridFunction,
    e: &ComplexVector,
) -> Result<Vec<f64>, SearchError> {
    let mut out = Vec::with_capacity(f.values().len());
    for v in f.values() {
        let defect = v.norm()
            - v.re_inner(e)
                .map_err(EngineError::from)?;
        out.push(defect.max(0.0));
    }
    Ok(out)
}
