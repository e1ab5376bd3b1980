//! Numerical verification and exploration of reverse triangle inequalities
//! for integrals of vector-valued functions.
//!
//! The base fact is `||integral f|| <= integral ||f||`. Under various
//! admissibility hypotheses this crate evaluates the known reverse bounds
//! (multiplicative, additive, quadratic, and weighted), certifies the
//! hypotheses exhaustively on a uniform grid, reports gaps and
//! equality-case residuals, constructs admissible example families, and
//! searches families for large relative gaps.
//!
//! Functions live on finite grids over `[a, b]` with values in `C^n`;
//! almost-everywhere statements are checked at every node or node pair.

pub mod error;
pub mod family;
pub mod grid;
pub mod hypothesis;
pub mod inequality;
pub mod profile;
pub mod quadrature;
pub mod search;
pub mod vector;

pub use error::{
    EngineError, FamilyError, GridError, HypothesisError, QuadratureError, SearchError,
    VectorError,
};
pub use family::{BallFamilySpec, BuiltFamily, ConstantDirectionSpec, FamilySpec, LagrangeFamilySpec};
pub use grid::{GridFunction, DEFAULT_SEGMENTS};
pub use hypothesis::{HypothesisReport, HypothesisSpec, Location};
pub use inequality::{InequalityReport, InequalitySpec, KernelMode, KernelSpec, Tolerances};
pub use profile::ScalarProfile;
pub use quadrature::{QuadratureConfig, QuadratureRule};
pub use search::{SearchResult, SearchSpec};
pub use vector::{ComplexVector, Scalar};
