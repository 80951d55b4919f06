//! Exact toolkit for duality between normality-type and decomposition-type
//! properties of cones in finite-dimensional dual pairs.

pub mod banach_sums;
pub mod cstar_checks;
pub mod duality_props;
pub mod error;
pub mod polar_calc;
pub mod polyrat;
pub mod random;
pub mod suites;

pub use error::{Error, Result};
pub use polyrat::{
    lp_solve, Extended, HRep, HalfSpace, LpOutcome, LpStatus, Polyhedron, RatVector, Rational,
    Sense, VRep,
};
pub use banach_sums::{DirectSumInstance, Exponent, SumProperty};
pub use duality_props::{optimal_constant, ConstantReport, Property, Quadruple};
pub use polar_calc::{bipolar, dual_cone, one_sided_polar, PolarIdentity};
